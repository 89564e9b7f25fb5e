use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Total truth table `Z_2^n -> Z_2^m`; row `x` holds the output code of input code `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanMapping {
    n: usize,
    m: usize,
    table: Vec<u64>,
}

impl BooleanMapping {
    pub fn new(n: usize, m: usize, table: Vec<u64>) -> Result<Self> {
        if n > 30 || m > 64 {
            return Err(Error::Capacity(format!("mapping {n}->{m} too large")));
        }
        if table.len() != 1usize << n {
            return Err(Error::Structural(format!("truth table has {} rows, expected {}", table.len(), 1usize << n)));
        }
        let limit = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        if let Some(bad) = table.iter().find(|&&y| y > limit) {
            return Err(Error::Structural(format!("output {bad} does not fit in {m} bits")));
        }
        Ok(BooleanMapping { n, m, table })
    }

    pub fn from_fn(n: usize, m: usize, f: impl Fn(u64) -> u64) -> Result<Self> {
        let table = (0..1u64 << n).map(f).collect();
        Self::new(n, m, table)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |x| x).expect("identity fits")
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        let n = p.n();
        Self::from_fn(n, n, |x| p.image(x)).expect("permutation fits")
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    /// Column `i` of the table as a boolean function.
    pub fn output_bit(&self, i: usize) -> Vec<bool> {
        self.table.iter().map(|y| (y >> i) & 1 == 1).collect()
    }

    pub fn is_bijective(&self) -> bool {
        if self.n != self.m {
            return false;
        }
        let mut seen = vec![false; self.table.len()];
        for &y in &self.table {
            if std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        true
    }

    /// Largest number of inputs sharing one output value.
    pub fn max_preimage(&self) -> usize {
        let mut counts = std::collections::HashMap::new();
        for &y in &self.table {
            *counts.entry(y).or_insert(0usize) += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    pub fn to_permutation(&self) -> Result<Permutation> {
        if !self.is_bijective() {
            return Err(Error::Domain("mapping is not a bijection".into()));
        }
        Permutation::from_table(self.n, self.table.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        let p = self.to_permutation()?;
        Ok(Self::from_permutation(&p.inverse()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijectivity_and_preimages() {
        let f = BooleanMapping::from_fn(3, 3, |x| (x + 1) % 8).unwrap();
        assert!(f.is_bijective());
        assert_eq!(f.max_preimage(), 1);
        let g = BooleanMapping::from_fn(3, 1, |x| (x.count_ones() % 2) as u64).unwrap();
        assert!(!g.is_bijective());
        assert_eq!(g.max_preimage(), 4);
        assert!(BooleanMapping::new(2, 1, vec![0, 1, 2, 0]).is_err());
    }
}
