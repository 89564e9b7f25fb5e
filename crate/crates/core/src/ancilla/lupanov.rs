use std::collections::HashMap;

use super::network::{conjunctions, Allocator};
use crate::bits::{Bits, MAX_LINES};
use crate::error::{Error, Result};
use crate::model::{BooleanMapping, Circuit, Gate};

/// Split of the inputs into `k` leading variables, whose `2^k` conjunctions are cut into
/// `p` groups of at most `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LupanovParams {
    pub k: usize,
    pub s: usize,
    pub p: usize,
}

impl LupanovParams {
    /// Checked parameters with `s = n - 2k` and `p = ceil(2^k / s)`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || 2 * k >= n {
            return Err(Error::Parameter(format!("need 1 <= k < n/2, got k={k} for n={n}")));
        }
        let s = n - 2 * k;
        Ok(LupanovParams { k, s, p: (1usize << k).div_ceil(s) })
    }

    /// `k = ceil(n / phi(n))` with `phi(n) = max(2, floor(n / (log2 n + log2 log2 (n+2))))`,
    /// lowered until `s >= 1`.
    pub fn auto(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameter(format!("no admissible split for n={n}")));
        }
        let nf = n as f64;
        let phi = ((nf / (nf.log2() + (nf + 2.0).log2().log2())).floor() as usize).max(2);
        let k = n.div_ceil(phi).min((n - 1) / 2);
        Self::new(n, k)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let want = Self::new(n, self.k)?;
        if *self != want {
            return Err(Error::Parameter(format!("inconsistent parameters {self:?} for n={n}, expected {want:?}")));
        }
        Ok(())
    }
}

/// Circuit for `f` on inputs `0..n`, outputs `n..n+m` and scratch above, built from
/// five stages: conjunctions of the leading variables, group sums, per-cofactor sums,
/// conjunctions of the trailing variables, and the final products. Scratch keeps garbage.
pub fn lupanov_synth(f: &BooleanMapping, params: Option<LupanovParams>) -> Result<Circuit> {
    let n = f.inputs();
    let m = f.outputs();
    let params = match params {
        Some(p) => {
            p.validate(n)?;
            p
        }
        None => LupanovParams::auto(n)?,
    };
    let LupanovParams { k, s, p } = params;
    let rest = n - k;
    let cofactors = 1usize << rest;
    let width_cap = MAX_LINES;
    let mut alloc = Allocator::new(Bits::from_lines(n + m..width_cap));

    // cofactor masks over the 2^k assignments of the leading variables
    let mask_of = |i: usize, j: usize| -> Bits {
        (0..1usize << k).filter(|&sigma| (f.eval((sigma | j << k) as u64) >> i) & 1 == 1).collect()
    };
    let masks: Vec<Vec<Bits>> = (0..m).map(|i| (0..cofactors).map(|j| mask_of(i, j)).collect()).collect();
    let group_bits = |t: usize| Bits::from_lines(t * s..((t + 1) * s).min(1 << k));

    let mut g1 = Vec::new();
    let lead: Vec<usize> = (0..k).collect();
    let conj = conjunctions(&lead, &mut alloc, &mut g1)?;

    // group sums, only for the pieces some cofactor uses
    let mut g2 = Vec::new();
    let mut group_line: HashMap<(usize, Bits), usize> = HashMap::new();
    let mut g3 = Vec::new();
    let mut cofactor_line: HashMap<Bits, usize> = HashMap::new();
    for row in &masks {
        for mask in row {
            if mask.is_empty() || cofactor_line.contains_key(mask) {
                continue;
            }
            let mut parts = Vec::new();
            for t in 0..p {
                let piece = *mask & group_bits(t);
                if piece.is_empty() {
                    continue;
                }
                let line = match group_line.get(&(t, piece)) {
                    Some(&l) => l,
                    None => {
                        let l = if piece.len() == 1 {
                            conj[piece.first().expect("nonempty")]
                        } else {
                            let l = alloc.take()?;
                            g2.extend(piece.iter().map(|sigma| Gate::cnot(conj[sigma], l)));
                            l
                        };
                        group_line.insert((t, piece), l);
                        l
                    }
                };
                parts.push(line);
            }
            let line = if parts.len() == 1 {
                parts[0]
            } else {
                let l = alloc.take()?;
                g3.extend(parts.iter().map(|&src| Gate::cnot(src, l)));
                l
            };
            cofactor_line.insert(*mask, line);
        }
    }

    let mut g4 = Vec::new();
    let trail: Vec<usize> = (k..n).collect();
    let tails = conjunctions(&trail, &mut alloc, &mut g4)?;

    let mut g5 = Vec::new();
    for (i, row) in masks.iter().enumerate() {
        for (j, mask) in row.iter().enumerate() {
            if let Some(&w) = cofactor_line.get(mask) {
                g5.push(Gate::toffoli(tails[j], w, n + i));
            }
        }
    }

    let used = [&g1, &g2, &g3, &g4, &g5].iter().flat_map(|g| g.iter()).map(|g| g.max_line() + 1).max().unwrap_or(0);
    let width = used.max(n + m);
    let mut c = Circuit::from_gates(width, [g1, g2, g3, g4, g5].concat())?;
    c.set_significant_inputs(n);
    c.set_significant_outputs(Some((n..n + m).collect()));
    Ok(c)
}

/// Baseline: every minterm of all `n` inputs, then one CNOT per true minterm and output.
pub fn sdnf_synth(f: &BooleanMapping) -> Result<Circuit> {
    let n = f.inputs();
    let m = f.outputs();
    let mut alloc = Allocator::new(Bits::from_lines(n + m..MAX_LINES));
    let mut gates = Vec::new();
    let vars: Vec<usize> = (0..n).collect();
    let mins = conjunctions(&vars, &mut alloc, &mut gates)?;
    for i in 0..m {
        for (x, &l) in mins.iter().enumerate() {
            if (f.eval(x as u64) >> i) & 1 == 1 {
                gates.push(Gate::cnot(l, n + i));
            }
        }
    }
    let width = gates.iter().map(|g| g.max_line() + 1).max().unwrap_or(0).max(n + m);
    let mut c = Circuit::from_gates(width, gates)?;
    c.set_significant_inputs(n);
    c.set_significant_outputs(Some((n..n + m).collect()));
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn auto_params() {
        assert_eq!(LupanovParams::auto(6).unwrap(), LupanovParams { k: 2, s: 2, p: 2 });
        assert_eq!(LupanovParams::auto(5).unwrap(), LupanovParams { k: 2, s: 1, p: 4 });
        assert_eq!(LupanovParams::auto(3).unwrap(), LupanovParams { k: 1, s: 1, p: 2 });
        for n in 3..=20 {
            let p = LupanovParams::auto(n).unwrap();
            assert_eq!(p.s, n - 2 * p.k);
            assert!(p.s >= 1);
        }
        assert!(LupanovParams::auto(2).is_err());
        assert!(LupanovParams::new(6, 3).is_err());
        assert!(LupanovParams { k: 2, s: 2, p: 3 }.validate(6).is_err());
    }

    #[test]
    fn identity_on_four() {
        let f = BooleanMapping::identity(4);
        let c = lupanov_synth(&f, None).unwrap();
        assert!(c.realizes(&f, None));
    }

    #[test]
    fn random_bijections_on_six() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            let f = BooleanMapping::from_permutation(&Permutation::random(6, &mut rng));
            let c = lupanov_synth(&f, None).unwrap();
            assert!(c.realizes(&f, None));
            assert!(c.len() <= 4 * 64, "L={}", c.len());
        }
    }

    #[test]
    fn and_beats_minterm_sum() {
        let f = BooleanMapping::from_fn(4, 1, |x| (x == 15) as u64).unwrap();
        let c = lupanov_synth(&f, None).unwrap();
        let base = sdnf_synth(&f).unwrap();
        assert!(c.realizes(&f, None));
        assert!(base.realizes(&f, None));
        assert!(c.len() < base.len());
    }

    #[test]
    fn explicit_params_and_wide_outputs() {
        let f = BooleanMapping::from_fn(5, 7, |x| (x * 3) & 127).unwrap();
        let c = lupanov_synth(&f, Some(LupanovParams::new(5, 1).unwrap())).unwrap();
        assert!(c.realizes(&f, None));
    }
}
