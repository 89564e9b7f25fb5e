//! Permutation synthesis by conjugation onto canonical gates.

mod kgroup;
pub mod mct;
mod pair;
mod script;
mod transposition;

pub use kgroup::{k_group_bound, k_group_script, k_group_script_ordered, synth_k_group, synth_k_group_ordered};
pub use mct::{decompose_mct, lower_to_omega2, vchain_dirty, MctMode};
pub use pair::{dependent_script, pair_script, synth_dependent_pair, synth_dependent_split, synth_pair};
pub use script::ConjugationScript;
pub use transposition::{
    synth_transposition, synth_transposition_mixed, synth_transposition_via_base, transposition_script,
};

use crate::error::{Error, Result};
use crate::model::Circuit;
use crate::perm::{groups_of_k, pair_decomposition, Pair, Permutation, Transposition};

/// Gate library available to the synthesizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Basis {
    /// NOT, CNOT and 2-CNOT only.
    #[default]
    Omega2,
    /// Any number of controls.
    Omega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// One transposition at a time.
    A,
    /// Pairs of transpositions.
    #[default]
    B,
    /// Groups of `K` independent transpositions, remainder by pairs.
    KGroup,
    /// Cube-face search, remainder by pairs.
    Face,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SynthesisOptions {
    pub basis: Basis,
    pub method: Method,
    /// Transpositions per group for [`Method::KGroup`]; 2 when unset.
    pub group_size: Option<usize>,
    /// Realize odd permutations on one extra line.
    pub allow_ancilla_lift: bool,
    /// Face search also tries right multiplication.
    pub left_right_heuristic: bool,
    /// Treat [`Method::B`] as [`Method::Face`].
    pub face_search: bool,
}

impl SynthesisOptions {
    pub fn new(basis: Basis, method: Method) -> Self {
        SynthesisOptions { basis, method, ..Default::default() }
    }
}

/// Transpositions whose left-to-right product is the cycle.
fn cycle_transpositions(c: &[u64]) -> impl Iterator<Item = Transposition> + '_ {
    c[1..].iter().map(move |&y| Transposition::new(c[0], y))
}

fn by_transpositions(h: &Permutation, basis: Basis) -> Result<Circuit> {
    let n = h.n();
    let mut c = Circuit::new(n);
    for cyc in h.cycles() {
        for t in cycle_transpositions(&cyc) {
            c.append(&synth_transposition(&t, n)?);
        }
    }
    match basis {
        Basis::Omega => Ok(c),
        Basis::Omega2 => lower_to_omega2(&c),
    }
}

pub(crate) fn by_pairs(h: &Permutation, basis: Basis) -> Result<Circuit> {
    let n = h.n();
    let mut c = Circuit::new(n);
    for p in pair_decomposition(h)? {
        let part = match p {
            Pair::Independent(s, t) => synth_pair(&s, &t, n, basis)?,
            Pair::Dependent { x, y, z } => synth_dependent_pair(x, y, z, n, basis)?,
        };
        c.append(&part);
    }
    Ok(c)
}

fn by_groups(h: &Permutation, kk: usize, basis: Basis) -> Result<Circuit> {
    let n = h.n();
    let (groups, rest) = groups_of_k(h, kk);
    let mut c = Circuit::new(n);
    for g in &groups {
        c.append(&synth_k_group(g, n, basis)?);
    }
    c.append(&by_pairs(&rest, basis)?);
    Ok(c)
}

/// Circuit realizing `h`, on `n` lines or, for a lifted odd `h`, on `n + 1`.
pub fn synth_permutation(h: &Permutation, opts: &SynthesisOptions) -> Result<Circuit> {
    let n = h.n();
    if n == 0 || n > 63 {
        return Err(Error::Capacity(format!("width {n} not supported")));
    }
    let method = if opts.face_search && opts.method == Method::B { Method::Face } else { opts.method };
    let needs_even = n >= 4 && !(method == Method::A && opts.basis == Basis::Omega);
    if needs_even && !h.is_even() {
        if !opts.allow_ancilla_lift {
            return Err(Error::Parity(format!("odd permutation on {n} >= 4 lines needs an extra line")));
        }
        let mut c = synth_permutation(&h.lift(), opts)?;
        c.set_significant_inputs(n);
        c.set_significant_outputs(Some((0..n).collect()));
        return Ok(c);
    }
    if h.is_identity() {
        return Ok(Circuit::new(n));
    }
    if n < 4 {
        return by_transpositions(h, opts.basis);
    }
    match method {
        Method::A => by_transpositions(h, opts.basis),
        Method::B => by_pairs(h, opts.basis),
        Method::KGroup => {
            let kk = opts.group_size.unwrap_or(2);
            if !kk.is_power_of_two() || (2 * kk).trailing_zeros() as usize >= n {
                return Err(Error::Parameter(format!("group size {kk} invalid for width {n}")));
            }
            by_groups(h, kk, opts.basis)
        }
        Method::Face => crate::reduce::face_synth(h, opts),
    }
}

/// Mixed-polarity transposition chain: each cycle is split into adjacent transpositions,
/// dropping the edge with the largest Hamming distance.
pub fn synth_mixed_polarity(h: &Permutation) -> Result<Circuit> {
    let n = h.n();
    let mut c = Circuit::new(n);
    for cyc in h.cycles() {
        let l = cyc.len();
        let dist = |i: usize| (cyc[i] ^ cyc[(i + 1) % l]).count_ones();
        let drop = (0..l).max_by_key(|&i| (dist(i), std::cmp::Reverse(i))).expect("nonempty cycle");
        // rotate so the dropped edge closes the cycle
        let rot: Vec<u64> = (0..l).map(|i| cyc[(drop + 1 + i) % l]).collect();
        for i in (0..l - 1).rev() {
            c.append(&synth_transposition_mixed(&Transposition::new(rot[i], rot[i + 1]), n)?);
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_is_empty() {
        let c = synth_permutation(&Permutation::identity(5), &SynthesisOptions::default()).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn every_method_realizes_random_even() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 4..=6 {
            let h = Permutation::random_even(n, &mut rng);
            for (basis, method) in [
                (Basis::Omega, Method::A),
                (Basis::Omega2, Method::B),
                (Basis::Omega, Method::B),
                (Basis::Omega2, Method::KGroup),
                (Basis::Omega2, Method::Face),
            ] {
                let c = synth_permutation(&h, &SynthesisOptions::new(basis, method)).unwrap();
                assert_eq!(c.permutation().unwrap(), h, "{method:?}");
                if basis == Basis::Omega2 {
                    assert!(c.max_controls() <= 2);
                }
            }
        }
    }

    #[test]
    fn odd_needs_lift() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = loop {
            let h = Permutation::random(4, &mut rng);
            if !h.is_even() {
                break h;
            }
        };
        let opts = SynthesisOptions::default();
        assert!(matches!(synth_permutation(&h, &opts), Err(Error::Parity(_))));
        let lifted = SynthesisOptions { allow_ancilla_lift: true, ..opts };
        let c = synth_permutation(&h, &lifted).unwrap();
        assert_eq!(c.width(), 5);
        assert!(c.realizes(&crate::model::BooleanMapping::from_permutation(&h), None));
    }

    #[test]
    fn small_width_uses_single_transpositions() {
        let h = Permutation::from_cycles(3, &[vec![0, 5]]).unwrap();
        let c = synth_permutation(&h, &SynthesisOptions::default()).unwrap();
        assert_eq!(c.permutation().unwrap(), h);
    }

    #[test]
    fn mixed_polarity_chain() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=6 {
            let h = Permutation::random(n, &mut rng);
            assert_eq!(synth_mixed_polarity(&h).unwrap().permutation().unwrap(), h);
        }
    }
}
