use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::model::{BooleanMapping, Circuit, Gate};
use crate::perm::Permutation;
use crate::synth::{synth_permutation, SynthesisOptions};

/// Mapping read from the circuit's declared outputs with zero ancilla.
fn mapping_of(c: &Circuit, m: usize) -> Result<BooleanMapping> {
    let n = c.significant_inputs();
    let outs = c.output_lines(m);
    if outs.len() < m {
        return Err(Error::Verification(format!("circuit declares fewer than {m} outputs")));
    }
    BooleanMapping::from_fn(n, m, |x| {
        let y = c.eval_bits(Bits::from_word(x));
        outs.iter().enumerate().filter(|(_, &l)| y.contains(l)).fold(0, |a, (j, _)| a | 1 << j)
    })
}

/// Output lines must be fresh: disjoint from the inputs and never read by a gate.
fn write_only_outputs(c: &Circuit, n: usize) -> Result<Vec<usize>> {
    let outs = c.output_lines(n);
    let out_set = Bits::from_lines(outs.iter().copied());
    let read = c.gates().iter().fold(Bits::EMPTY, |a, g| a | g.controls());
    if outs.iter().any(|&l| l < n) || !read.is_disjoint(&out_set) {
        return Err(Error::Structural("outputs must be fresh lines that no gate reads".into()));
    }
    Ok(outs)
}

/// Garbage-free circuit from `c` for a bijection `f` and `c_inv` for its inverse:
/// `c`, then `c` without its output gates mirrored, then `c_inv` reading the outputs and
/// cancelling the inputs, then `c_inv` without its output gates mirrored.
pub fn cleanup_by_mirroring(c: &Circuit, c_inv: &Circuit) -> Result<Circuit> {
    let n = c.significant_inputs();
    let f = mapping_of(c, n)?;
    if !f.is_bijective() {
        return Err(Error::Verification("first circuit does not realize a bijection".into()));
    }
    let finv = f.inverse()?;
    if c_inv.significant_inputs() != n || !c_inv.realizes(&finv, None) {
        return Err(Error::Verification("second circuit does not realize the inverse".into()));
    }
    if c.garbage_free(&f) {
        return Ok(c.clone());
    }
    let outs = write_only_outputs(c, n)?;
    let inv_outs = write_only_outputs(c_inv, n)?;

    let mut map = vec![usize::MAX; c_inv.width()];
    for (l, slot) in map.iter_mut().enumerate().take(n) {
        *slot = outs[l];
    }
    for (i, &l) in inv_outs.iter().enumerate() {
        map[l] = i;
    }
    let taken = Bits::from_lines((0..n).chain(outs.iter().copied()));
    let mut spare = (0..).filter(|l| !taken.contains(*l));
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = spare.next().expect("unbounded");
    }
    let width = c.width().max(map.iter().max().map_or(0, |&l| l + 1));

    let out_set = Bits::from_lines(outs.iter().copied());
    let inv_set = Bits::from_lines(inv_outs.iter().copied());
    let inv: Vec<Gate> = c_inv.gates().iter().map(|g| g.remap(&map)).collect();
    let mut gates: Vec<Gate> = c.gates().to_vec();
    gates.extend(c.gates().iter().rev().filter(|g| !out_set.contains(g.target())));
    gates.extend(inv.iter().copied());
    gates.extend(c_inv.gates().iter().zip(&inv).rev().filter(|(g, _)| !inv_set.contains(g.target())).map(|(_, r)| *r));
    let mut res = Circuit::from_gates(width, gates)?;
    res.set_significant_inputs(n);
    res.set_significant_outputs(Some(outs));
    Ok(res)
}

/// Fewest ancilla any circuit for `f` needs: `ceil(log2 d)` for the largest preimage size `d`.
pub fn min_ancilla(f: &BooleanMapping) -> usize {
    let d = f.max_preimage();
    d.next_power_of_two().trailing_zeros() as usize
}

/// Reject `q` ancilla when they cannot host `f`.
pub fn check_ancilla(f: &BooleanMapping, q: usize) -> Result<()> {
    let need = min_ancilla(f);
    let spare = (f.inputs() + q).checked_sub(f.outputs());
    if q < need || spare.is_none_or(|s| s < need) {
        return Err(Error::Capacity(format!("mapping needs at least {need} ancilla lines, {q} given")));
    }
    Ok(())
}

/// Permutation of `n + q` lines sending `(x, 0)` to `f(x)` on the low `m` lines and the
/// rank of `x` within its preimage above them. The free part is filled in order, with one
/// swap when that makes the permutation even.
pub fn embed_mapping(f: &BooleanMapping, q: usize) -> Result<Permutation> {
    check_ancilla(f, q)?;
    let (n, m) = (f.inputs(), f.outputs());
    let w = n + q;
    if w > crate::model::DENSE_LIMIT {
        return Err(Error::Capacity(format!("embedding width {w} above the dense limit")));
    }
    let size = 1usize << w;
    let mut table = vec![u64::MAX; size];
    let mut used = vec![false; size];
    let mut rank: std::collections::HashMap<u64, u64> = std::collections::HashMap::new();
    for x in 0..1u64 << n {
        let y = f.eval(x);
        let r = rank.entry(y).or_insert(0);
        let img = y | *r << m;
        *r += 1;
        table[x as usize] = img;
        used[img as usize] = true;
    }
    let mut free = (0..size as u64).filter(|&v| !used[v as usize]);
    for slot in table.iter_mut().skip(1 << n) {
        *slot = free.next().expect("counts match");
    }
    let mut p = Permutation::from_table(w, table.clone())?;
    if !p.is_even() && size > 1 << n {
        table.swap(size - 1, size - 2);
        p = Permutation::from_table(w, table)?;
    }
    Ok(p)
}

/// Circuit for an arbitrary mapping on `n + q` lines through its even embedding.
pub fn synth_mapping(f: &BooleanMapping, q: usize, opts: &SynthesisOptions) -> Result<Circuit> {
    let p = embed_mapping(f, q)?;
    let mut c = synth_permutation(&p, opts)?;
    c.set_significant_inputs(f.inputs());
    c.set_significant_outputs(Some((0..f.outputs()).collect()));
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ancilla::lupanov_synth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_stays_identity() {
        let f = BooleanMapping::identity(3);
        let c = Circuit::new(3);
        let r = cleanup_by_mirroring(&c, &c).unwrap();
        assert!(r.realizes(&f, None) && r.garbage_free(&f));
        let l = lupanov_synth(&f, None).unwrap();
        let r = cleanup_by_mirroring(&l, &l).unwrap();
        assert!(r.realizes(&f, None) && r.garbage_free(&f));
    }

    #[test]
    fn rotation_cleaned() {
        let f = BooleanMapping::from_fn(3, 3, |x| ((x << 1) | (x >> 2)) & 7).unwrap();
        let finv = f.inverse().unwrap();
        let a = lupanov_synth(&f, None).unwrap();
        let b = lupanov_synth(&finv, None).unwrap();
        assert!(!a.garbage_free(&f));
        let r = cleanup_by_mirroring(&a, &b).unwrap();
        assert!(r.realizes(&f, None));
        assert!(r.garbage_free(&f));
        assert!(r.len() <= 4 * a.len().max(b.len()));
    }

    #[test]
    fn random_five_bit_bijections() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..5 {
            let f = BooleanMapping::from_permutation(&Permutation::random(5, &mut rng));
            let finv = f.inverse().unwrap();
            let a = lupanov_synth(&f, None).unwrap();
            let b = lupanov_synth(&finv, None).unwrap();
            let r = cleanup_by_mirroring(&a, &b).unwrap();
            assert!(r.realizes(&f, None) && r.garbage_free(&f));
            assert!(r.len() <= 4 * a.len().max(b.len()));
        }
    }

    #[test]
    fn wrong_inverse_rejected() {
        let f = BooleanMapping::from_fn(3, 3, |x| x ^ 1).unwrap();
        let g = BooleanMapping::from_fn(3, 3, |x| x ^ 2).unwrap();
        let a = lupanov_synth(&f, None).unwrap();
        let b = lupanov_synth(&g, None).unwrap();
        assert!(matches!(cleanup_by_mirroring(&a, &b), Err(Error::Verification(_))));
    }

    #[test]
    fn surjective_guard() {
        // 2-to-1 on every value: d = 2 needs one ancilla
        let f = BooleanMapping::from_fn(3, 3, |x| x & 6).unwrap();
        assert_eq!(min_ancilla(&f), 1);
        assert!(matches!(check_ancilla(&f, 0), Err(Error::Capacity(_))));
        assert!(matches!(synth_mapping(&f, 0, &SynthesisOptions::default()), Err(Error::Capacity(_))));
        let c = synth_mapping(&f, 1, &SynthesisOptions::default()).unwrap();
        assert!(c.realizes(&f, None));
        let and = BooleanMapping::from_fn(4, 1, |x| (x == 15) as u64).unwrap();
        assert_eq!(min_ancilla(&and), 4);
        assert!(check_ancilla(&and, 3).is_err());
        let c = synth_mapping(&and, 4, &SynthesisOptions::default()).unwrap();
        assert!(c.realizes(&and, None));
    }

    #[test]
    fn embedding_is_even() {
        let f = BooleanMapping::from_fn(3, 2, |x| x % 3).unwrap();
        let p = embed_mapping(&f, 2).unwrap();
        assert!(p.is_even());
    }
}
