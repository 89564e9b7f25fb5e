use super::mct::lower_to_omega2;
use super::script::{all_ones, bit, canon_second, canon_transposition, lines_of, ConjugationScript};
use super::Basis;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::model::{Circuit, Gate};
use crate::perm::{split_dependent, Pair, Transposition};

fn check_basis(n: usize, basis: Basis) -> Result<()> {
    if basis == Basis::Omega2 && n < 4 {
        return Err(Error::Basis(format!("pair synthesis on {n} < 4 lines has no free line for the core")));
    }
    Ok(())
}

fn check_fit(points: &[u64], n: usize) -> Result<()> {
    if !(2..=64).contains(&n) || points.iter().any(|&p| p > all_ones(n)) {
        return Err(Error::Structural(format!("points {points:?} do not fit {n} lines")));
    }
    Ok(())
}

fn finish(s: &ConjugationScript, n: usize, core: &[Gate], basis: Basis) -> Result<Circuit> {
    let core = Circuit::from_gates(n, core.to_vec())?;
    let core = match basis {
        Basis::Omega => core,
        Basis::Omega2 => lower_to_omega2(&core)?,
    };
    s.wrap(n, core.gates())
}

/// Conjugators and core gate for two independent transpositions.
pub fn pair_script(p: &Transposition, q: &Transposition, n: usize) -> Result<(ConjugationScript, Gate)> {
    if !p.independent_of(q) {
        return Err(Error::Structural("transpositions share a point".into()));
    }
    check_fit(&[p.a, p.b, q.a, q.b], n)?;
    let full = all_ones(n);
    let mut s = ConjugationScript::new(&[p.a, p.b, q.a, q.b]);
    let (_, _, i1) = canon_transposition(&mut s, 0, 1, n);
    // the point of the second pair with fewer zeros needs fewer conjugators
    if s.point(3).count_ones() > s.point(2).count_ones() {
        s = ConjugationScript::new(&[p.a, p.b, q.b, q.a]);
        canon_transposition(&mut s, 0, 1, n);
    }
    let i2 = canon_second(&mut s, 2, i1, n);
    let w = s.point(3);
    let target = full & !(1 << i1) & !(1 << i2);
    if w != target {
        if bit(w, i1) || bit(w, i2) {
            let i3 =
                lines_of(!w & full & !(1 << i1) & !(1 << i2)).next().expect("w differs from the first three points");
            s.conj(Gate::not(i3));
            if bit(w, i1) {
                s.conj(Gate::cnot(i3, i1));
            }
            if bit(w, i2) {
                s.conj(Gate::cnot(i3, i2));
            }
            s.conj(Gate::not(i3));
        }
        let w = s.point(3);
        let fill = !w & full & !(1 << i1) & !(1 << i2);
        s.conj(Gate::not(i1));
        s.conj(Gate::not(i2));
        for i in lines_of(fill) {
            s.conj(Gate::toffoli(i1, i2, i));
        }
        s.conj(Gate::not(i1));
        s.conj(Gate::not(i2));
    }
    debug_assert_eq!(s.point(3), target);
    let core = Gate::mct(Bits::range(n).without(i1).without(i2), i1);
    Ok((s, core))
}

/// Two independent transpositions by conjugation onto one gate with `n-2` controls.
pub fn synth_pair(p: &Transposition, q: &Transposition, n: usize, basis: Basis) -> Result<Circuit> {
    check_basis(n, basis)?;
    let (s, core) = pair_script(p, q, n)?;
    finish(&s, n, &[core], basis)
}

/// Conjugators and the four-gate core for the 3-cycle `(x,y) ∘ (x,z)`.
pub fn dependent_script(x: u64, y: u64, z: u64, n: usize) -> Result<(ConjugationScript, Vec<Gate>)> {
    if x == y || y == z || x == z {
        return Err(Error::Structural("3-cycle needs three distinct points".into()));
    }
    if n < 3 {
        return Err(Error::Parameter("3-cycle core needs at least 3 lines".into()));
    }
    check_fit(&[x, y, z], n)?;
    let mut s = ConjugationScript::new(&[x, y, z]);
    let (top, _, i1) = canon_transposition(&mut s, 0, 1, n);
    let i2 = canon_second(&mut s, 2, i1, n);
    // the cycle runs 1…1 -> 1…1-e_{r1} -> 1…1-e_{r2}
    let (r1, r2) = if top == 0 { (i1, i2) } else { (i2, i1) };
    s.conj(Gate::not(r1));
    s.conj(Gate::not(r2));
    s.conj(Gate::cnot(r2, r1));
    s.conj(Gate::not(r2));
    let j = (0..n).find(|&l| l != r1 && l != r2).expect("n >= 3");
    let wide = Gate::mct(Bits::range(n).without(j).without(r2), r2);
    let narrow = Gate::toffoli(r2, j, r1);
    Ok((s, vec![narrow, wide, narrow, wide]))
}

/// The 3-cycle `(x,y) ∘ (x,z)` through its own four-gate core.
pub fn synth_dependent_pair(x: u64, y: u64, z: u64, n: usize, basis: Basis) -> Result<Circuit> {
    check_basis(n, basis)?;
    let (s, core) = dependent_script(x, y, z, n)?;
    finish(&s, n, &core, basis)
}

/// The 3-cycle as two independent pairs sharing a transposition of two spare codes.
pub fn synth_dependent_split(x: u64, y: u64, z: u64, n: usize, basis: Basis) -> Result<Circuit> {
    check_basis(n, basis)?;
    let (first, second) = split_dependent(n, x, y, z)?;
    let mut c = Circuit::new(n);
    for p in [first, second] {
        let Pair::Independent(a, b) = p else { unreachable!() };
        c.append(&synth_pair(&a, &b, n, basis)?);
    }
    Ok(c)
}
