//! Synthesize a sparse permutation on 10 lines with each conjugation method.

use revsynth::synth::{synth_permutation, Basis, Method, SynthesisOptions};
use revsynth::{Permutation, Weights};

fn main() -> revsynth::Result<()> {
    let h = Permutation::from_cycles(10, &[vec![3, 17, 5], vec![8, 9], vec![600, 1023]])?;
    println!("moved points: {}", h.moved_count());

    for (method, basis) in [
        (Method::A, Basis::Omega),
        (Method::B, Basis::Omega2),
        (Method::KGroup, Basis::Omega2),
        (Method::Face, Basis::Omega2),
    ] {
        let c = synth_permutation(&h, &SynthesisOptions::new(basis, method))?;
        assert_eq!(c.permutation()?, h);
        let r = c.cost(&Weights::default());
        println!("{method:?} {basis:?}: L={} D={} W={}", r.l, r.d, r.w);
    }

    // odd permutations need one more line
    let odd = Permutation::transposition(4, 0, 7);
    let opts = SynthesisOptions { allow_ancilla_lift: true, ..Default::default() };
    let c = synth_permutation(&odd, &opts)?;
    println!("odd on {} lines: L={}", c.width(), c.len());
    Ok(())
}
