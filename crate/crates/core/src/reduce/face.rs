use std::collections::{BTreeSet, HashMap};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::model::{Circuit, Gate};
use crate::perm::{pair_decomposition, Pair, Permutation, Transposition};
use crate::synth::{lower_to_omega2, synth_dependent_pair, synth_pair, Basis, SynthesisOptions};

/// A subcube whose points pair up along one difference vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCandidate {
    /// Difference shared by every covered transposition.
    pub d: u64,
    /// Free coordinates; always a superset of the support of `d`.
    pub free: u64,
    /// Values of the fixed coordinates (zero on free ones).
    pub fixed_value: u64,
    /// Size of the whole equal-difference set the face was cut from.
    pub pool: usize,
    pub transpositions: Vec<Transposition>,
}

impl FaceCandidate {
    pub fn dimension(&self) -> usize {
        self.free.count_ones() as usize
    }

    /// `(line, value)` for every fixed coordinate below `n`.
    pub fn fixed_positions(&self, n: usize) -> Vec<(usize, bool)> {
        (0..n).filter(|&i| (self.free >> i) & 1 == 0).map(|i| (i, (self.fixed_value >> i) & 1 == 1)).collect()
    }

    /// One gate per line of `d`, all controlled by the fixed coordinates.
    pub fn gates(&self, n: usize) -> Vec<Gate> {
        let fixed = Bits::range(n) - Bits::from_word(self.free);
        let pos = fixed & Bits::from_word(self.fixed_value);
        let neg = fixed - pos;
        (0..n)
            .filter(|&t| (self.d >> t) & 1 == 1)
            .map(|t| Gate::new(t, pos, neg).expect("free lines are not controls"))
            .collect()
    }

    pub fn permutation(&self, n: usize) -> Permutation {
        Permutation::from_transpositions(n, &self.transpositions)
    }
}

fn pairs_with_diff(c: &[u64], d: u64) -> Vec<(usize, usize)> {
    let mut m = Vec::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if c[i] ^ c[j] == d {
                m.push((i, j));
            }
        }
    }
    m
}

/// Split `c` at positions `i < j`: `(c_i, c_j) ∘ c` is `(c_i, c_{j+1}, …, c_{i-1}) (c_j, c_{i+1}, …, c_{j-1})`.
fn split(c: &[u64], i: usize, j: usize) -> [Vec<u64>; 2] {
    let l = c.len();
    let first: Vec<u64> = std::iter::once(c[i]).chain((j + 1..l + i).map(|k| c[k % l])).collect();
    let second: Vec<u64> = c[j..=j].iter().chain(&c[i + 1..j]).copied().collect();
    [first, second]
}

/// Picks one of the candidate position pairs of a cycle.
type PairPick<'a> = &'a dyn Fn(&[u64], &[(usize, usize)]) -> (usize, usize);

fn tstar_with(d: u64, c: &[u64], pick: PairPick) -> Vec<Transposition> {
    let mut out = Vec::new();
    let mut work = vec![c.to_vec()];
    while let Some(cyc) = work.pop() {
        if cyc.len() < 2 {
            continue;
        }
        let m = pairs_with_diff(&cyc, d);
        if m.is_empty() {
            continue;
        }
        let (i, j) = pick(&cyc, &m);
        out.push(Transposition::new(cyc[i], cyc[j]));
        work.extend(split(&cyc, i, j));
    }
    out.sort();
    out
}

/// Equal-difference transpositions factored out of cycle `c`, choosing at each step the
/// pair whose endpoints lie inside the fewest other candidate spans.
pub fn tstar_greedy(d: u64, c: &[u64]) -> Vec<Transposition> {
    tstar_with(d, c, &|cyc, m| {
        let w = |x: usize| m.iter().filter(|&&(i, j)| i <= x && x <= j).count();
        let _ = cyc;
        *m.iter().min_by_key(|&&(i, j)| (w(i) + w(j), i, j)).expect("nonempty")
    })
}

/// Same factorization taking the first candidate pair each time.
pub fn tstar_first(d: u64, c: &[u64]) -> Vec<Transposition> {
    tstar_with(d, c, &|_, m| m[0])
}

/// Greedy equal-difference transpositions over all cycles of `h`.
pub fn tstar(d: u64, h: &Permutation) -> Vec<Transposition> {
    let mut out: Vec<Transposition> = h.cycles().iter().flat_map(|c| tstar_greedy(d, c)).collect();
    out.sort();
    out
}

fn combinations(items: &[usize], r: usize, f: &mut dyn FnMut(u64) -> bool) -> bool {
    fn go(items: &[usize], r: usize, start: usize, acc: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if r == 0 {
            return f(acc);
        }
        for k in start..items.len() {
            if items.len() - k < r {
                break;
            }
            if go(items, r - 1, k + 1, acc | 1 << items[k], f) {
                return true;
            }
        }
        false
    }
    go(items, r, 0, 0, f)
}

/// Largest face inside the point set of `ts`, all sharing difference `d`.
fn best_face_for(n: usize, d: u64, ts: &[Transposition], min_dim: usize) -> Option<FaceCandidate> {
    let points: Vec<u64> = ts.iter().flat_map(|t| [t.a, t.b]).collect();
    let w = d.count_ones() as usize;
    let cap = (usize::BITS - 1 - points.len().leading_zeros()) as usize;
    if cap < w || cap < min_dim {
        return None;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| (d >> i) & 1 == 0).collect();
    for extra in (0..=(cap - w).min(rest.len())).rev() {
        if w + extra < min_dim {
            break;
        }
        let mut found = None;
        combinations(&rest, extra, &mut |e| {
            let free = d | e;
            let size = 1usize << (w + extra);
            let mut groups: HashMap<u64, usize> = HashMap::new();
            for &p in &points {
                *groups.entry(p & !free).or_default() += 1;
            }
            if let Some(key) = groups.iter().filter(|(_, &c)| c == size).map(|(&k, _)| k).min() {
                found = Some((free, key));
                return true;
            }
            false
        });
        if let Some((free, key)) = found {
            let transpositions = ts.iter().filter(|t| t.a & !free == key).copied().collect();
            return Some(FaceCandidate { d, free, fixed_value: key, pool: ts.len(), transpositions });
        }
    }
    None
}

fn better(a: &FaceCandidate, b: &FaceCandidate) -> bool {
    let key =
        |f: &FaceCandidate| (std::cmp::Reverse(f.dimension()), std::cmp::Reverse(f.pool), !f.free, f.fixed_value, f.d);
    key(a) < key(b)
}

/// For every difference vector occurring inside a cycle of `h`, the largest admissible face
/// of its greedy equal-difference set.
pub fn find_faces(h: &Permutation) -> Vec<FaceCandidate> {
    let n = h.n();
    let cycles = h.cycles();
    let mut ds = BTreeSet::new();
    for c in &cycles {
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                ds.insert(c[i] ^ c[j]);
            }
        }
    }
    ds.into_iter()
        .filter_map(|d| {
            let ts: Vec<Transposition> = cycles.iter().flat_map(|c| tstar_greedy(d, c)).collect();
            best_face_for(n, d, &ts, 1)
        })
        .collect()
}

/// Best face of dimension at least 2, by the tie-break order.
fn best_face(h: &Permutation) -> Option<FaceCandidate> {
    let n = h.n();
    let cycles = h.cycles();
    let mut ds = BTreeSet::new();
    for c in &cycles {
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                ds.insert(c[i] ^ c[j]);
            }
        }
    }
    let mut best: Option<FaceCandidate> = None;
    for d in ds {
        let ts: Vec<Transposition> = cycles.iter().flat_map(|c| tstar_greedy(d, c)).collect();
        let floor = best.as_ref().map_or(2, |b| b.dimension());
        if let Some(f) = best_face_for(n, d, &ts, floor) {
            if f.dimension() >= 2 && best.as_ref().is_none_or(|b| better(&f, b)) {
                best = Some(f);
            }
        }
    }
    best
}

enum Step {
    Face(FaceCandidate),
    Pair(Pair),
}

impl Step {
    fn permutation(&self, n: usize) -> Permutation {
        match self {
            Step::Face(f) => f.permutation(n),
            Step::Pair(p) => p.to_permutation(n),
        }
    }

    fn circuit(&self, n: usize, basis: Basis) -> Result<Circuit> {
        match self {
            Step::Face(f) => {
                let c = Circuit::from_gates(n, f.gates(n))?;
                match basis {
                    Basis::Omega => Ok(c),
                    Basis::Omega2 => lower_to_omega2(&c),
                }
            }
            Step::Pair(Pair::Independent(a, b)) => synth_pair(a, b, n, basis),
            Step::Pair(Pair::Dependent { x, y, z }) => synth_dependent_pair(*x, *y, *z, n, basis),
        }
    }
}

/// Next factor of `h` taken from the left (`h = g ∘ h'`) or, for `right`, from the right
/// (`h = h' ∘ g`), and the remaining permutation.
fn next_step(h: &Permutation, right: bool) -> Result<(Step, Permutation)> {
    let n = h.n();
    let source = if right { h.inverse() } else { h.clone() };
    let step = match best_face(&source) {
        Some(f) => Step::Face(f),
        None => {
            let pairs = pair_decomposition(h)?;
            let p = *if right { pairs.last() } else { pairs.first() }.expect("non-identity permutation");
            Step::Pair(p)
        }
    };
    let g_inv = step.permutation(n).inverse();
    let rest = if right { h.compose(&g_inv) } else { g_inv.compose(h) };
    Ok((step, rest))
}

fn face_dim(h: &Permutation) -> usize {
    if h.is_identity() {
        return usize::MAX;
    }
    best_face(h).map_or(0, |f| f.dimension())
}

/// Synthesis that peels cube faces off `h` while one of dimension at least 2 exists and
/// falls back to transposition pairs otherwise.
pub fn face_synth(h: &Permutation, opts: &SynthesisOptions) -> Result<Circuit> {
    let n = h.n();
    if !h.is_even() {
        return Err(Error::Parity("face synthesis needs an even permutation".into()));
    }
    if n < 4 && opts.basis == Basis::Omega2 {
        return Err(Error::Basis(format!("face synthesis in the two-control basis needs 4 lines, got {n}")));
    }
    let mut prefix = Circuit::new(n);
    let mut suffix: Vec<Circuit> = Vec::new();
    let mut cur = h.clone();
    while !cur.is_identity() {
        let (left, h_left) = next_step(&cur, false)?;
        let use_right = if opts.left_right_heuristic {
            let (right, h_right) = next_step(&cur, true)?;
            if face_dim(&h_right) > face_dim(&h_left) {
                suffix.push(right.circuit(n, opts.basis)?);
                cur = h_right;
                true
            } else {
                false
            }
        } else {
            false
        };
        if !use_right {
            prefix.append(&left.circuit(n, opts.basis)?);
            cur = h_left;
        }
    }
    for c in suffix.iter().rev() {
        prefix.append(c);
    }
    Ok(prefix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::Method;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn worked_cycle_example() {
        // x1..x3 = 1, 2, 4 and y_i = x_i ^ 56 with the cycle (x1 x2 x3 y1 y3 y2)
        let d = 56;
        let c = [1, 2, 4, 1 ^ d, 4 ^ d, 2 ^ d];
        let t = tstar_greedy(d, &c);
        assert_eq!(t, vec![Transposition::new(2, 2 ^ d), Transposition::new(4, 4 ^ d)]);
        assert_eq!(tstar_first(d, &c).len(), 1);
        assert!(tstar_greedy(7, &c).is_empty());
    }

    #[test]
    fn cnot_is_one_face() {
        for n in 2..=6 {
            let h = Circuit::from_gates(n, vec![Gate::cnot(0, 1)]).unwrap().permutation().unwrap();
            let best = find_faces(&h).into_iter().max_by_key(|f| f.dimension()).unwrap();
            assert_eq!(best.dimension(), n - 1);
            assert_eq!(best.d, 2);
            assert_eq!(best.gates(n), vec![Gate::cnot(0, 1)]);
        }
        let h = Circuit::from_gates(5, vec![Gate::cnot(0, 1)]).unwrap().permutation().unwrap();
        let c = face_synth(&h, &SynthesisOptions::new(Basis::Omega, Method::Face)).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn random_even_realized_both_ways() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for n in 4..=5 {
            let h = Permutation::random_even(n, &mut rng);
            for lr in [false, true] {
                let opts =
                    SynthesisOptions { left_right_heuristic: lr, ..SynthesisOptions::new(Basis::Omega2, Method::Face) };
                let c = face_synth(&h, &opts).unwrap();
                assert_eq!(c.permutation().unwrap(), h);
            }
        }
    }
}
