use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Gf2PolyField;
use crate::error::{Error, Result};
use crate::model::BooleanMapping;
use crate::perm::Permutation;

/// Widest field whose tables are materialized.
pub const TABLE_LIMIT: usize = 20;

fn check_size(field: &Gf2PolyField) -> Result<usize> {
    let n = field.degree();
    if n > TABLE_LIMIT {
        return Err(Error::Capacity(format!("degree {n} above table limit {TABLE_LIMIT}")));
    }
    Ok(n)
}

/// `alpha^k` for every exponent code `k`, with the all-ones code sent to zero.
pub fn table_pow(field: &Gf2PolyField) -> Result<BooleanMapping> {
    let n = check_size(field)?;
    let m = field.order();
    let mut table = Vec::with_capacity(1 << n);
    let mut cur = 1u64;
    for _ in 0..m {
        table.push(cur);
        cur = field.mul(cur, field.alpha());
    }
    table.push(0);
    BooleanMapping::new(n, n, table)
}

/// Exponent of every nonzero element, with zero sent to the all-ones code.
pub fn table_log(field: &Gf2PolyField) -> Result<BooleanMapping> {
    table_pow(field)?.inverse()
}

/// The power table as a permutation of the codes.
pub fn pow_permutation(field: &Gf2PolyField) -> Result<Permutation> {
    table_pow(field)?.to_permutation()
}

/// Rule for picking the representative of each squaring class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representative {
    /// Smallest exponent.
    KMin,
    /// Largest exponent.
    KMax,
    /// Exponent closest in total Hamming distance to the class members.
    KDist,
    /// Uniform choice from a seeded generator.
    Random(u64),
}

impl std::str::FromStr for Representative {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k_min" | "kmin" | "min" => Ok(Representative::KMin),
            "k_max" | "kmax" | "max" => Ok(Representative::KMax),
            "k_dist" | "kdist" | "dist" => Ok(Representative::KDist),
            _ => match s.strip_prefix("random") {
                Some(seed) => seed
                    .trim_start_matches([':', '=', '('])
                    .trim_end_matches(')')
                    .parse()
                    .map(Representative::Random)
                    .map_err(|_| Error::Parameter(format!("bad seed in '{s}'"))),
                None => Err(Error::Parameter(format!("unknown representative rule '{s}'"))),
            },
        }
    }
}

/// Elements closed under squaring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    /// `x, x^2, x^4, …` in order.
    pub members: Vec<u64>,
    pub representative: u64,
    pub representative_exponent: u64,
}

impl CyclicClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, y: u64) -> bool {
        self.members.contains(&y)
    }
}

/// Partition of the nonzero elements into squaring classes, representatives by `rule`.
pub fn cyclic_classes_with(field: &Gf2PolyField, rule: Representative) -> Result<Vec<CyclicClass>> {
    check_size(field)?;
    let log = table_log(field)?;
    let size = 1usize << field.degree();
    let mut seen = vec![false; size];
    let mut rng = match rule {
        Representative::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut out = Vec::new();
    for x in 1..size as u64 {
        if seen[x as usize] {
            continue;
        }
        let mut members = vec![x];
        let mut y = field.square(x);
        while y != x {
            members.push(y);
            y = field.square(y);
        }
        for &y in &members {
            seen[y as usize] = true;
        }
        let exps: Vec<u64> = members.iter().map(|&y| log.eval(y)).collect();
        let pick = match rule {
            Representative::KMin => (0..members.len()).min_by_key(|&i| exps[i]),
            Representative::KMax => (0..members.len()).max_by_key(|&i| exps[i]),
            Representative::KDist => (0..members.len())
                .min_by_key(|&i| (members.iter().map(|&y| (exps[i] ^ y).count_ones()).sum::<u32>(), exps[i])),
            Representative::Random(_) => {
                let idx: Vec<usize> = (0..members.len()).collect();
                idx.choose(rng.as_mut().expect("seeded")).copied()
            }
        }
        .expect("nonempty class");
        out.push(CyclicClass { representative: members[pick], representative_exponent: exps[pick], members });
    }
    Ok(out)
}

/// Squaring classes with smallest-exponent representatives.
pub fn cyclic_classes(field: &Gf2PolyField) -> Result<Vec<CyclicClass>> {
    cyclic_classes_with(field, Representative::KMin)
}

/// Exponent of the class representative for every nonzero element; zero goes to all ones.
pub fn reduced_log_table(field: &Gf2PolyField, rule: Representative) -> Result<BooleanMapping> {
    let n = check_size(field)?;
    let mut table = vec![(1u64 << n) - 1; 1 << n];
    for c in cyclic_classes_with(field, rule)? {
        for &y in &c.members {
            table[y as usize] = c.representative_exponent;
        }
    }
    BooleanMapping::new(n, n, table)
}

/// Exponent of `y` from its class representative by rotating the representative's exponent.
pub fn exponent_recovery(field: &Gf2PolyField, class: &CyclicClass, y: u64) -> Result<u64> {
    let i =
        class.members.iter().position(|&m| m == y).ok_or_else(|| Error::Domain(format!("{y} is not in the class")))?;
    let r = class.members.iter().position(|&m| m == class.representative).expect("representative is a member");
    let i = (i + class.len() - r) % class.len();
    Ok(field.rotl(class.representative_exponent, i))
}

#[cfg(test)]
mod tests {
    use super::super::field::parse_poly;
    use super::*;

    fn field(p: &str) -> Gf2PolyField {
        Gf2PolyField::new(parse_poly(p).unwrap(), None).unwrap()
    }

    #[test]
    fn pow_and_log_invert() {
        let f = field("x^4+x+1");
        let pow = table_pow(&f).unwrap();
        let log = table_log(&f).unwrap();
        assert!(pow.is_bijective());
        for k in 0..15 {
            assert_eq!(log.eval(pow.eval(k)), k);
        }
        assert_eq!(pow.eval(15), 0);
        assert_eq!(log.eval(0), 15);
    }

    #[test]
    fn prime_degree_classes() {
        for p in ["x^5+x^2+1", "x^7+x+1"] {
            let f = field(p);
            let cls = cyclic_classes(&f).unwrap();
            let n = f.degree();
            assert_eq!(cls.iter().filter(|c| c.len() == 1).count(), 1);
            assert!(cls.iter().all(|c| c.len() == 1 || c.len() == n));
            assert_eq!(cls.iter().map(|c| c.len()).sum::<usize>() as u64, f.order());
        }
    }

    #[test]
    fn period_three_exponent_on_six() {
        let f = field("x^6+x+1");
        let y = f.exp(0b011011);
        let c = cyclic_classes(&f).unwrap().into_iter().find(|c| c.contains(y)).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn recovery_reconstructs_log() {
        for rule in [Representative::KMin, Representative::KMax, Representative::KDist, Representative::Random(7)] {
            let f = field("x^6+x^3+1");
            let log = table_log(&f).unwrap();
            let reduced = reduced_log_table(&f, rule).unwrap();
            for c in cyclic_classes_with(&f, rule).unwrap() {
                assert_eq!(exponent_recovery(&f, &c, c.representative).unwrap(), c.representative_exponent);
                for &y in &c.members {
                    assert_eq!(reduced.eval(y), c.representative_exponent);
                    let k = exponent_recovery(&f, &c, y).unwrap();
                    assert_eq!(k, log.eval(y));
                    assert_eq!(f.exp(k), y);
                }
                let sq = f.square(c.representative);
                assert_eq!(exponent_recovery(&f, &c, sq).unwrap(), f.rotl(c.representative_exponent, 1));
            }
        }
    }

    #[test]
    fn foreign_element_rejected() {
        let f = field("x^4+x+1");
        let cls = cyclic_classes(&f).unwrap();
        assert!(matches!(exponent_recovery(&f, &cls[0], cls[1].members[0]), Err(Error::Domain(_))));
    }

    #[test]
    fn representative_rules() {
        let f = field("x^5+x^2+1");
        let log = table_log(&f).unwrap();
        let lo = cyclic_classes_with(&f, Representative::KMin).unwrap();
        let hi = cyclic_classes_with(&f, Representative::KMax).unwrap();
        for (a, b) in lo.iter().zip(&hi) {
            assert!(a.members.iter().all(|&y| log.eval(y) >= a.representative_exponent));
            assert!(b.members.iter().all(|&y| log.eval(y) <= b.representative_exponent));
        }
        let dist = cyclic_classes_with(&f, Representative::KDist).unwrap();
        for c in &dist {
            let cost = |k: u64| c.members.iter().map(|&y| (k ^ y).count_ones()).sum::<u32>();
            assert!(c.members.iter().all(|&y| cost(log.eval(y)) >= cost(c.representative_exponent)));
        }
        assert_eq!("random:3".parse::<Representative>().unwrap(), Representative::Random(3));
    }
}
