//! Permutations of `Z_2^n`, composed left to right: `(h ∘ g)(x) = g(h(x))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Unordered pair of distinct codes, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    pub a: u64,
    pub b: u64,
}

impl Transposition {
    pub fn new(a: u64, b: u64) -> Self {
        assert_ne!(a, b, "transposition needs two distinct points");
        Transposition { a: a.min(b), b: a.max(b) }
    }

    pub fn diff(&self) -> u64 {
        self.a ^ self.b
    }

    pub fn touches(&self, x: u64) -> bool {
        self.a == x || self.b == x
    }

    pub fn independent_of(&self, o: &Transposition) -> bool {
        !self.touches(o.a) && !self.touches(o.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Product of two transpositions, as produced by [`pair_decomposition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    /// `(x,y) ∘ (z,w)` over four distinct points.
    Independent(Transposition, Transposition),
    /// `(x,y) ∘ (x,z)`, the 3-cycle `(x,y,z)`.
    Dependent { x: u64, y: u64, z: u64 },
}

impl Pair {
    pub fn to_permutation(&self, n: usize) -> Permutation {
        match *self {
            Pair::Independent(s, t) => Permutation::from_transpositions(n, &[s, t]),
            Pair::Dependent { x, y, z } => {
                Permutation::from_transpositions(n, &[Transposition::new(x, y), Transposition::new(x, z)])
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Dense(Vec<u64>),
    /// Images of moved points only.
    Sparse(BTreeMap<u64, u64>),
}

/// Bijection on `n`-bit codes.
#[derive(Clone)]
pub struct Permutation {
    n: usize,
    repr: Repr,
}

/// Widest permutation that may be stored as a table.
pub const DENSE_MAX_BITS: usize = 26;

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 64);
        Permutation { n, repr: Repr::Sparse(BTreeMap::new()) }
    }

    pub fn from_table(n: usize, table: Vec<u64>) -> Result<Self> {
        if n > DENSE_MAX_BITS {
            return Err(Error::Capacity(format!("dense permutation on {n} bits")));
        }
        if table.len() != 1usize << n {
            return Err(Error::Structural(format!("table length {} is not 2^{n}", table.len())));
        }
        let mut seen = vec![false; table.len()];
        for &y in &table {
            if y as usize >= table.len() || std::mem::replace(&mut seen[y as usize], true) {
                return Err(Error::Structural("table is not a bijection".into()));
            }
        }
        Ok(Permutation { n, repr: Repr::Dense(table) })
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<u64>]) -> Result<Self> {
        if n > 64 {
            return Err(Error::Capacity(format!("{n} bits")));
        }
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut map = BTreeMap::new();
        for c in cycles {
            if c.len() < 2 {
                continue;
            }
            for (k, &x) in c.iter().enumerate() {
                if x > limit {
                    return Err(Error::Structural(format!("code {x} exceeds {n} bits")));
                }
                if map.insert(x, c[(k + 1) % c.len()]).is_some() {
                    return Err(Error::Structural(format!("code {x} appears twice in cycles")));
                }
            }
        }
        Ok(Permutation { n, repr: Repr::Sparse(map) })
    }

    pub fn transposition(n: usize, a: u64, b: u64) -> Self {
        Self::from_cycles(n, &[vec![a, b]]).expect("valid transposition")
    }

    /// Left-to-right product of the given transpositions.
    pub fn from_transpositions(n: usize, ts: &[Transposition]) -> Self {
        let mut p = Permutation::identity(n);
        for t in ts {
            p = p.compose(&Permutation::transposition(n, t.a, t.b));
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Repr::Dense(_))
    }

    #[inline]
    pub fn image(&self, x: u64) -> u64 {
        match &self.repr {
            Repr::Dense(t) => t[x as usize],
            Repr::Sparse(m) => *m.get(&x).unwrap_or(&x),
        }
    }

    pub fn moved_points(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Dense(t) => (0..t.len() as u64).filter(|&x| t[x as usize] != x).collect(),
            Repr::Sparse(m) => m.keys().copied().collect(),
        }
    }

    pub fn moved_count(&self) -> usize {
        match &self.repr {
            Repr::Dense(t) => t.iter().enumerate().filter(|(x, &y)| *x as u64 != y).count(),
            Repr::Sparse(m) => m.len(),
        }
    }

    /// `m = ⌈log₂|M|⌉`, 0 for the identity.
    pub fn log_moved(&self) -> u32 {
        let c = self.moved_count() as u64;
        if c <= 1 {
            0
        } else {
            64 - (c - 1).leading_zeros()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.moved_count() == 0
    }

    fn moved_map(&self) -> BTreeMap<u64, u64> {
        match &self.repr {
            Repr::Dense(t) => {
                t.iter().enumerate().filter(|(x, &y)| *x as u64 != y).map(|(x, &y)| (x as u64, y)).collect()
            }
            Repr::Sparse(m) => m.clone(),
        }
    }

    pub fn to_dense(&self) -> Result<Permutation> {
        if self.n > DENSE_MAX_BITS {
            return Err(Error::Capacity(format!("dense permutation on {} bits", self.n)));
        }
        let table = (0..1u64 << self.n).map(|x| self.image(x)).collect();
        Ok(Permutation { n: self.n, repr: Repr::Dense(table) })
    }

    pub fn to_sparse(&self) -> Permutation {
        Permutation { n: self.n, repr: Repr::Sparse(self.moved_map()) }
    }

    /// Sparse when at most `2^n / 64` points move, dense otherwise.
    pub fn auto(&self) -> Permutation {
        let sparse = self.n > DENSE_MAX_BITS || (self.moved_count() as u128) * 64 <= (1u128 << self.n);
        if sparse {
            self.to_sparse()
        } else {
            self.to_dense().expect("checked width")
        }
    }

    pub fn inverse(&self) -> Permutation {
        match &self.repr {
            Repr::Dense(t) => {
                let mut inv = vec![0; t.len()];
                for (x, &y) in t.iter().enumerate() {
                    inv[y as usize] = x as u64;
                }
                Permutation { n: self.n, repr: Repr::Dense(inv) }
            }
            Repr::Sparse(m) => Permutation { n: self.n, repr: Repr::Sparse(m.iter().map(|(&x, &y)| (y, x)).collect()) },
        }
    }

    /// `self ∘ other`: apply `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n, other.n, "composing permutations of different widths");
        match (&self.repr, &other.repr) {
            (Repr::Sparse(a), Repr::Sparse(b)) => {
                let mut map = BTreeMap::new();
                for &x in a.keys().chain(b.keys()) {
                    let y = other.image(self.image(x));
                    if y != x {
                        map.insert(x, y);
                    }
                }
                Permutation { n: self.n, repr: Repr::Sparse(map) }
            }
            _ => {
                let table = (0..1u64 << self.n).map(|x| other.image(self.image(x))).collect();
                Permutation { n: self.n, repr: Repr::Dense(table) }
            }
        }
    }

    /// `g⁻¹ ∘ self ∘ g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    /// Disjoint cycles, each starting at its smallest element, sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<u64>> {
        let map = self.moved_map();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut c = vec![start];
            seen.insert(start);
            let mut x = map[&start];
            while x != start {
                seen.insert(x);
                c.push(x);
                x = map[&x];
            }
            out.push(c);
        }
        out
    }

    pub fn parity(&self) -> Parity {
        let t: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if t.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// The permutation on `n + 1` bits acting as `self` on both halves of the new top line.
    pub fn lift(&self) -> Permutation {
        let n = self.n + 1;
        let top = 1u64 << self.n;
        let mut map = BTreeMap::new();
        for (x, y) in self.moved_map() {
            map.insert(x, y);
            map.insert(x | top, y | top);
        }
        Permutation { n, repr: Repr::Sparse(map) }
    }

    /// Uniformly random permutation on `n <= 20` bits.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Permutation {
        let mut t: Vec<u64> = (0..1u64 << n).collect();
        t.shuffle(rng);
        Permutation::from_table(n, t).expect("shuffle is a bijection")
    }

    /// Random even permutation, obtained by fixing the parity of a uniform one.
    pub fn random_even<R: Rng>(n: usize, rng: &mut R) -> Permutation {
        let p = Permutation::random(n, rng);
        if p.is_even() {
            p
        } else {
            p.compose(&Permutation::transposition(n, 0, 1)).to_dense().expect("small width")
        }
    }

    /// Random permutation moving exactly `k >= 2` points, as random cycles over them.
    pub fn random_sparse<R: Rng>(n: usize, k: usize, rng: &mut R) -> Permutation {
        assert!(k >= 2 && (n >= 64 || k as u128 <= 1u128 << n));
        let mut pts = BTreeSet::new();
        while pts.len() < k {
            let x = if n == 64 { rng.gen() } else { rng.gen_range(0..1u64 << n) };
            pts.insert(x);
        }
        let mut pts: Vec<u64> = pts.into_iter().collect();
        pts.shuffle(rng);
        // a random derangement of the chosen points, built from cycles of length >= 2
        let mut cycles = Vec::new();
        let mut i = 0;
        while i < k {
            let rest = k - i;
            let len = if rest <= 3 { rest } else { rng.gen_range(2..=rest.min(8)) };
            let len = if rest - len == 1 { len + 1 } else { len };
            cycles.push(pts[i..i + len].to_vec());
            i += len;
        }
        Permutation::from_cycles(n, &cycles).expect("disjoint cycles")
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => a == b,
            _ => self.moved_map() == other.moved_map(),
        }
    }
}

impl Eq for Permutation {}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.n)?;
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs.iter().take(16) {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        if cs.len() > 16 {
            write!(f, "...")?;
        }
        Ok(())
    }
}

/// Split `h = G_1 ∘ … ∘ G_t ∘ h'` into groups of `k` pairwise independent transpositions.
///
/// A cycle `(i1 … il)` equals `(i1,i2) ∘ (i3,i4) ∘ … ∘ (i(2r-1),i(2r)) ∘ (i1,i3,…,i(2r-1),i(2r+1),…,il)`,
/// so it yields up to `⌊l/2⌋` independent transpositions per group. Extraction stops once
/// the remaining cycles cannot supply `k` of them.
pub fn groups_of_k(h: &Permutation, k: usize) -> (Vec<Vec<Transposition>>, Permutation) {
    assert!(k >= 1);
    let n = h.n();
    let mut cycles = h.cycles();
    let mut groups = Vec::new();
    loop {
        let capacity: usize = cycles.iter().map(|c| c.len() / 2).sum();
        if capacity < k {
            break;
        }
        // long cycles first so that K = 2 takes both transpositions from a cycle of length >= 5
        let mut order: Vec<usize> = (0..cycles.len()).collect();
        order.sort_by_key(|&i| if cycles[i].len() >= 5 { 0 } else { 1 });
        let mut need = k;
        let mut group = Vec::with_capacity(k);
        for &ci in &order {
            if need == 0 {
                break;
            }
            let c = &mut cycles[ci];
            let r = (c.len() / 2).min(need);
            if r == 0 {
                continue;
            }
            for j in 0..r {
                group.push(Transposition::new(c[2 * j], c[2 * j + 1]));
            }
            let mut rest: Vec<u64> = (0..r).map(|j| c[2 * j]).collect();
            rest.extend_from_slice(&c[2 * r..]);
            *c = rest;
            need -= r;
        }
        cycles.retain(|c| c.len() >= 2);
        groups.push(group);
    }
    let rest = Permutation::from_cycles(n, &cycles).expect("remainder cycles are disjoint");
    (groups, rest)
}

/// Write an even `h` as a left-to-right product of transposition pairs.
///
/// All pairs are independent except possibly the last, which is then a 3-cycle.
pub fn pair_decomposition(h: &Permutation) -> Result<Vec<Pair>> {
    if !h.is_even() {
        return Err(Error::Parity("odd permutation has no pair decomposition".into()));
    }
    let (groups, rest) = groups_of_k(h, 2);
    let mut out: Vec<Pair> = groups.into_iter().map(|g| Pair::Independent(g[0], g[1])).collect();
    let rc = rest.cycles();
    match rc.len() {
        0 => {}
        1 if rc[0].len() == 3 => out.push(Pair::Dependent { x: rc[0][0], y: rc[0][1], z: rc[0][2] }),
        _ => unreachable!("an even remainder with no independent pair is a single 3-cycle"),
    }
    Ok(out)
}

/// `(x,y) ∘ (x,z) = ((x,y) ∘ (a,b)) ∘ ((a,b) ∘ (x,z))` with `a, b` the two smallest free codes.
pub fn split_dependent(n: usize, x: u64, y: u64, z: u64) -> Result<(Pair, Pair)> {
    if n < 3 {
        return Err(Error::Parameter("splitting a 3-cycle needs at least 5 codes".into()));
    }
    let mut free = (0u64..).filter(|c| *c != x && *c != y && *c != z);
    let a = free.next().expect("infinite");
    let b = free.next().expect("infinite");
    let ab = Transposition::new(a, b);
    Ok((Pair::Independent(Transposition::new(x, y), ab), Pair::Independent(ab, Transposition::new(x, z))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn product(n: usize, pairs: &[Pair]) -> Permutation {
        pairs.iter().fold(Permutation::identity(n), |acc, p| acc.compose(&p.to_permutation(n)))
    }

    #[test]
    fn cycle_as_transpositions() {
        // (1,2,3) = (1,2) ∘ (1,3)
        let c = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        let t = Permutation::from_transpositions(3, &[Transposition::new(1, 2), Transposition::new(1, 3)]);
        assert_eq!(c, t);
    }

    #[test]
    fn compose_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = Permutation::random(5, &mut rng);
        assert!(p.compose(&p.inverse()).is_identity());
        let t = Permutation::transposition(4, 3, 9);
        assert!(t.compose(&t).is_identity());
    }

    #[test]
    fn cycles_are_canonical() {
        let p = Permutation::from_cycles(4, &[vec![9, 4, 7], vec![5, 2]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![2, 5], vec![4, 7, 9]]);
        assert!(Permutation::identity(3).cycles().is_empty());
        assert_eq!(p.to_dense().unwrap().cycles(), p.cycles());
    }

    #[test]
    fn parity_counts_transpositions() {
        assert_eq!(Permutation::identity(3).parity(), Parity::Even);
        assert_eq!(Permutation::transposition(3, 0, 5).parity(), Parity::Odd);
        assert_eq!(Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap().parity(), Parity::Even);
    }

    #[test]
    fn five_cycle_gives_pair_and_three_cycle() {
        let h = Permutation::from_cycles(4, &[vec![1, 2, 3, 4, 5]]).unwrap();
        let pairs = pair_decomposition(&h).unwrap();
        assert_eq!(pairs[0], Pair::Independent(Transposition::new(1, 2), Transposition::new(3, 4)));
        assert_eq!(pairs[1], Pair::Dependent { x: 1, y: 3, z: 5 });
        assert_eq!(product(4, &pairs), h);
    }

    #[test]
    fn dependent_split_multiplies_back() {
        let (p, q) = split_dependent(4, 3, 7, 1).unwrap();
        let want = Pair::Dependent { x: 3, y: 7, z: 1 }.to_permutation(4);
        assert_eq!(p.to_permutation(4).compose(&q.to_permutation(4)), want);
        assert_eq!(p, Pair::Independent(Transposition::new(3, 7), Transposition::new(0, 2)));
    }

    #[test]
    fn pair_decomposition_rebuilds_random_even() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=6 {
            for _ in 0..20 {
                let h = Permutation::random_even(n, &mut rng);
                let pairs = pair_decomposition(&h).unwrap();
                assert_eq!(product(n, &pairs), h);
                let m = h.log_moved();
                assert!(pairs.len() <= 1usize << m.saturating_sub(1));
            }
        }
    }

    #[test]
    fn odd_rejected() {
        assert!(matches!(pair_decomposition(&Permutation::transposition(3, 1, 2)), Err(Error::Parity(_))));
    }

    #[test]
    fn lift_is_even() {
        let t = Permutation::transposition(3, 1, 6);
        let l = t.lift();
        assert!(l.is_even());
        assert_eq!(l.image(1 | 8), 6 | 8);
    }

    #[test]
    fn sparse_and_dense_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = Permutation::random_sparse(10, 12, &mut rng);
        assert_eq!(p.moved_count(), 12);
        assert!(!p.auto().is_dense());
        let d = p.to_dense().unwrap();
        assert_eq!(d, p);
        assert_eq!(d.compose(&p.inverse()), Permutation::identity(10));
    }
}
