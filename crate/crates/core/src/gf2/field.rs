use std::fmt;

use crate::error::{Error, Result};

/// Degree of a nonzero polynomial over GF(2) packed as bits.
pub fn degree(p: u64) -> Option<usize> {
    (p != 0).then(|| 63 - p.leading_zeros() as usize)
}

/// Carry-less product reduced modulo `f`.
pub fn mul_mod(mut a: u64, mut b: u64, f: u64) -> u64 {
    let n = degree(f).expect("nonzero modulus");
    let top = 1u64 << n;
    a = rem(a, f);
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= f;
        }
    }
    acc
}

/// Remainder of `a` modulo `f`.
pub fn rem(mut a: u64, f: u64) -> u64 {
    let n = degree(f).expect("nonzero modulus");
    while let Some(d) = degree(a).filter(|&d| d >= n) {
        a ^= f << (d - n);
    }
    a
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility by `gcd(x^(2^i) - x, f) = 1` for `i <= deg f / 2`.
pub fn is_irreducible(f: u64) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let mut t = 2u64;
    for _ in 0..n / 2 {
        t = mul_mod(t, t, f);
        if gcd(f, t ^ 2) != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Parse `x^4+x+1`, `0x13` or a binary string such as `10011`.
pub fn parse_poly(s: &str) -> Result<u64> {
    let s = s.trim();
    let bad = || Error::Parse { line: 1, msg: format!("bad polynomial '{s}'") };
    if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        return u64::from_str_radix(h, 16).map_err(|_| bad());
    }
    if let Some(b) = s.strip_prefix("0b") {
        return u64::from_str_radix(b, 2).map_err(|_| bad());
    }
    if !s.is_empty() && s.chars().all(|c| c == '0' || c == '1') {
        return u64::from_str_radix(s, 2).map_err(|_| bad());
    }
    let mut p = 0u64;
    for term in s.split('+').map(str::trim) {
        let e = match term {
            "1" => 0,
            "x" => 1,
            t => t.strip_prefix("x^").and_then(|e| e.trim_matches(['{', '}']).parse::<u32>().ok()).ok_or_else(bad)?,
        };
        if e > 63 {
            return Err(bad());
        }
        p ^= 1 << e;
    }
    Ok(p)
}

/// `x^4 + x + 1` style rendering.
pub fn format_poly(p: u64) -> String {
    if p == 0 {
        return "0".into();
    }
    let terms: Vec<String> = (0..64)
        .rev()
        .filter(|&e| (p >> e) & 1 == 1)
        .map(|e| match e {
            0 => "1".to_string(),
            1 => "x".to_string(),
            e => format!("x^{e}"),
        })
        .collect();
    terms.join(" + ")
}

/// The field `GF(2)[x] / f(x)` with a chosen primitive element.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Gf2PolyField {
    n: usize,
    modulus: u64,
    alpha: u64,
}

impl fmt::Debug for Gf2PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {} alpha {}", self.n, format_poly(self.modulus), format_poly(self.alpha))
    }
}

/// Largest supported degree.
pub const MAX_DEGREE: usize = 32;

impl Gf2PolyField {
    /// Field with `alpha` given, or the first primitive polynomial in increasing order from `x`.
    pub fn new(modulus: u64, alpha: Option<u64>) -> Result<Self> {
        let n = degree(modulus)
            .filter(|&d| (1..=MAX_DEGREE).contains(&d))
            .ok_or_else(|| Error::Parameter(format!("modulus degree must be 1..={MAX_DEGREE}")))?;
        if !is_irreducible(modulus) {
            return Err(Error::Parameter(format!("{} is reducible", format_poly(modulus))));
        }
        let mut fld = Gf2PolyField { n, modulus, alpha: 0 };
        match alpha {
            Some(a) => {
                let a = rem(a, modulus);
                if !fld.is_primitive(a) {
                    return Err(Error::Parameter(format!("{} is not primitive", format_poly(a))));
                }
                fld.alpha = a;
            }
            None => {
                fld.alpha = (2..1u64 << n).find(|&a| fld.is_primitive(a)).unwrap_or(1);
            }
        }
        Ok(fld)
    }

    /// Parse `n:<degree>;f:<poly>;alpha:<poly>`; `=` and whitespace are accepted too.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let (mut n, mut f, mut alpha) = (None, None, None);
        for item in spec.split([';', ' ', ',', '\t', '\n']).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once([':', '='])
                .ok_or_else(|| Error::Parse { line: 1, msg: format!("expected key:value, got '{item}'") })?;
            match k.trim() {
                "n" => {
                    n = Some(
                        v.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse { line: 1, msg: format!("bad degree '{v}'") })?,
                    )
                }
                "f" => f = Some(parse_poly(v)?),
                "alpha" => alpha = Some(parse_poly(v)?),
                other => return Err(Error::Parse { line: 1, msg: format!("unknown key '{other}'") }),
            }
        }
        let f = f.ok_or_else(|| Error::Parse { line: 1, msg: "missing modulus f".into() })?;
        let fld = Self::new(f, alpha)?;
        if n.is_some_and(|n| n != fld.n) {
            return Err(Error::Parameter(format!("degree {} does not match n", fld.n)));
        }
        Ok(fld)
    }

    pub fn spec(&self) -> String {
        format!("n:{};f:{:b};alpha:{}", self.n, self.modulus, format_poly(self.alpha).replace(' ', ""))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    /// Order of the multiplicative group, `2^n - 1`.
    pub fn order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.square(a);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Domain("zero has no inverse".into()));
        }
        Ok(self.pow(a, self.order() - 1))
    }

    /// Square root as `a^((M+1)/2)`.
    pub fn sqrt(&self, a: u64) -> u64 {
        self.pow(a, self.order().div_ceil(2))
    }

    /// `alpha^k`.
    pub fn exp(&self, k: u64) -> u64 {
        self.pow(self.alpha, k % self.order())
    }

    /// Whether `a` generates the multiplicative group.
    pub fn is_primitive(&self, a: u64) -> bool {
        let m = self.order();
        if a == 0 || a >= 1 << self.n {
            return false;
        }
        if m == 1 {
            return a == 1;
        }
        prime_factors(m).into_iter().all(|p| self.pow(a, m / p) != 1)
    }

    /// Cyclic left rotation of an `n`-bit exponent.
    pub fn rotl(&self, k: u64, by: usize) -> u64 {
        let n = self.n;
        let by = by % n;
        let mask = (1u64 << n) - 1;
        ((k << by) | (k >> ((n - by) % n))) & mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_brute(f: &Gf2PolyField, a: u64) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = f.mul(x, a);
            k += 1;
        }
        k
    }

    fn irreducible_brute(f: u64) -> bool {
        let n = degree(f).unwrap();
        n >= 1 && (2..1u64 << (n / 2 + 1)).filter(|&d| degree(d).unwrap() <= n / 2).all(|d| rem(f, d) != 0)
    }

    #[test]
    fn smallest_field() {
        let f = Gf2PolyField::new(0b111, None).unwrap();
        assert_eq!(f.alpha(), 0b10);
        assert_eq!(f.exp(2), 0b11);
        assert_eq!(f.exp(3), 1);
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for p in 2u64..1 << 11 {
            assert_eq!(is_irreducible(p), irreducible_brute(p), "{p:b}");
        }
    }

    #[test]
    fn primitivity_matches_order() {
        for n in 2..=10 {
            let f = (1u64 << n..1 << (n + 1)).find(|&p| is_irreducible(p)).unwrap();
            let fld = Gf2PolyField::new(f, None).unwrap();
            for a in 1..1u64 << n {
                assert_eq!(fld.is_primitive(a), order_brute(&fld, a) == fld.order());
            }
        }
    }

    #[test]
    fn square_roots_and_inverses() {
        for n in 2..=10 {
            let f = (1u64 << n..1 << (n + 1)).find(|&p| is_irreducible(p)).unwrap();
            let fld = Gf2PolyField::new(f, None).unwrap();
            for a in 1..1u64 << n {
                assert_eq!(fld.square(fld.sqrt(a)), a);
                assert_eq!(fld.mul(a, fld.inverse(a).unwrap()), 1);
            }
            assert!(matches!(fld.inverse(0), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn squaring_rotates_exponent() {
        let fld = Gf2PolyField::new(parse_poly("x^8+x^4+x^3+x^2+1").unwrap(), None).unwrap();
        for k in [1u64, 7, 100, 200, 254] {
            assert_eq!(fld.square(fld.exp(k)), fld.exp(fld.rotl(k, 1)));
        }
    }

    #[test]
    fn spec_round_trip() {
        let f = Gf2PolyField::parse_spec("n:4;f:0x1f;alpha:x+1").unwrap();
        assert_eq!(f.alpha(), 3);
        assert_eq!(Gf2PolyField::parse_spec(&f.spec()).unwrap(), f);
        let g = Gf2PolyField::parse_spec("n=2 f=111").unwrap();
        assert_eq!(g.modulus(), 7);
        assert!(Gf2PolyField::parse_spec("n:4;f:x^4+x^2+1").is_err());
        assert!(Gf2PolyField::parse_spec("n:4;f:x^4+x^3+x^2+x+1;alpha:x").is_err());
        assert!(Gf2PolyField::parse_spec("n:5;f:x^4+x+1").is_err());
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(parse_poly("x^4 + x + 1").unwrap(), 0b10011);
        assert_eq!(parse_poly("x^{10}+x^3+1").unwrap(), (1 << 10) | 9);
        assert_eq!(format_poly(0b10011), "x^4 + x + 1");
        assert!(parse_poly("y+1").is_err());
    }
}
