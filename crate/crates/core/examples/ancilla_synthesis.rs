//! Extra-line constructions: minterm network, Lupanov synthesis and garbage cleanup.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use revsynth::ancilla::{
    build_conjunction_network, cleanup_by_mirroring, conjunction_lines, face_cover_synth, lupanov_synth, sdnf_synth,
    AncillaBudget, LupanovParams,
};
use revsynth::{BooleanMapping, Permutation};

fn main() -> revsynth::Result<()> {
    let n = 4;
    let budget = AncillaBudget::zeroed(n, n + conjunction_lines(n));
    let net = build_conjunction_network(n, &[0, 1, 2, 3], &budget)?;
    println!("all {} minterms of {n} variables: {} gates", net.minterms.len(), net.circuit.len());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = BooleanMapping::from_permutation(&Permutation::random(6, &mut rng));
    println!("lupanov parameters for n=6: {:?}", LupanovParams::auto(6)?);
    let c = lupanov_synth(&f, None)?;
    let ci = lupanov_synth(&f.inverse()?, None)?;
    let baseline = sdnf_synth(&f)?;
    let cover = face_cover_synth(&f)?;
    println!(
        "lupanov L={} lines={}, minterm sum L={}, face cover L={}",
        c.len(),
        c.width(),
        baseline.len(),
        cover.len()
    );

    let clean = cleanup_by_mirroring(&c, &ci)?;
    assert!(clean.realizes(&f, None) && clean.garbage_free(&f));
    println!("garbage-free: L={} on {} lines", clean.len(), clean.width());
    Ok(())
}
