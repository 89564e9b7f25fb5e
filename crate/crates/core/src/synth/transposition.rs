use super::script::{all_ones, bit, canon_transposition, lines_of, ConjugationScript};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::model::{Circuit, Gate};
use crate::perm::Transposition;

fn check_points(t: &Transposition, n: usize) -> Result<()> {
    if n == 0 || n > 64 || t.b > all_ones(n) {
        return Err(Error::Structural(format!("transposition ({}, {}) does not fit {n} lines", t.a, t.b)));
    }
    Ok(())
}

/// Conjugators and the `(n-1)`-control core realizing one transposition.
pub fn transposition_script(t: &Transposition, n: usize) -> Result<(ConjugationScript, Gate)> {
    check_points(t, n)?;
    let mut s = ConjugationScript::new(&[t.a, t.b]);
    let (_, _, j) = canon_transposition(&mut s, 0, 1, n);
    let core = Gate::mct(Bits::range(n).without(j), j);
    Ok((s, core))
}

/// NOT/CNOT conjugators around one gate with `n-1` positive controls; at most `2(n+1)+1` gates.
pub fn synth_transposition(t: &Transposition, n: usize) -> Result<Circuit> {
    let (s, core) = transposition_script(t, n)?;
    s.wrap(n, &[core])
}

/// Transposition built outward from `(0, e_1)`: the base gate wrapped in NOTs, CNOTs from
/// line 0 spreading the difference, then NOTs moving `0` onto the first point.
pub fn synth_transposition_via_base(t: &Transposition, n: usize) -> Result<Circuit> {
    check_points(t, n)?;
    if n < 2 {
        return Circuit::from_gates(n, vec![Gate::not(0)]);
    }
    let (x, d) = (t.a, t.a ^ t.b);
    let mut outward: Vec<Gate> = (1..n).map(Gate::not).collect();
    for i in lines_of(d & !1) {
        outward.push(Gate::cnot(0, i));
    }
    if !bit(d, 0) {
        let j = (d & !1).trailing_zeros() as usize;
        outward.push(Gate::cnot(j, 0));
    }
    outward.extend(lines_of(x).map(Gate::not));
    let mut gates: Vec<Gate> = outward.iter().rev().copied().collect();
    gates.push(Gate::mct(Bits::range(n).without(0), 0));
    gates.extend(outward);
    Circuit::from_gates(n, gates)
}

/// CNOTs from the lowest differing line fold the difference onto one line, then a single
/// mixed-polarity gate swaps the pair; `2w - 1` gates for Hamming distance `w`.
pub fn synth_transposition_mixed(t: &Transposition, n: usize) -> Result<Circuit> {
    check_points(t, n)?;
    let d = t.diff();
    let p = d.trailing_zeros() as usize;
    let mut s = ConjugationScript::new(&[t.a, t.b]);
    for i in lines_of(d & !(1 << p)) {
        s.conj(Gate::cnot(p, i));
    }
    let x = s.point(0);
    let others = all_ones(n) & !(1 << p);
    let pos = Bits::from_word(x & others);
    let neg = Bits::from_word(!x & others);
    let core = Gate::new(p, pos, neg)?;
    s.wrap(n, &[core])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn realizes(c: &Circuit, t: &Transposition, n: usize) -> bool {
        c.permutation().unwrap() == Permutation::transposition(n, t.a, t.b)
    }

    #[test]
    fn canonical_pair_is_one_gate() {
        let t = Transposition::new(15, 15 ^ 4);
        let c = synth_transposition(&t, 4).unwrap();
        assert_eq!(c.gates(), &[Gate::mct(Bits::from_lines([0, 1, 3]), 2)]);
    }

    #[test]
    fn random_transpositions_within_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=10usize {
            for _ in 0..20 {
                let a = rng.gen_range(0..1u64 << n);
                let b = loop {
                    let b = rng.gen_range(0..1u64 << n);
                    if b != a {
                        break b;
                    }
                };
                let t = Transposition::new(a, b);
                for c in [synth_transposition(&t, n).unwrap(), synth_transposition_via_base(&t, n).unwrap()] {
                    assert!(realizes(&c, &t, n), "n={n} t={t:?}");
                }
                let c = synth_transposition(&t, n).unwrap();
                assert!(c.len() <= 2 * (n + 1) + 1);
                let m = synth_transposition_mixed(&t, n).unwrap();
                assert!(realizes(&m, &t, n));
                assert_eq!(m.len(), 2 * t.diff().count_ones() as usize - 1);
            }
        }
    }

    #[test]
    fn base_route_on_three_lines() {
        // points 000 and 110 with line 1 as the low bit
        let t = Transposition::new(0, 6);
        let c = synth_transposition_via_base(&t, 3).unwrap();
        assert_eq!(c.len(), 11);
        assert!(realizes(&c, &t, 3));
        let expect =
            [Gate::cnot(1, 0), Gate::cnot(0, 2), Gate::cnot(0, 1), Gate::not(2), Gate::not(1), Gate::toffoli(1, 2, 0)];
        assert_eq!(&c.gates()[..6], &expect);
    }
}
