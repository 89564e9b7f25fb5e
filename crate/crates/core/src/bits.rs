//! Fixed-capacity bitset used both for control sets and for wide line states.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

/// Maximum number of lines a circuit may have.
pub const MAX_LINES: usize = 1152;
const WORDS: usize = MAX_LINES / 64;

/// A set of line indices, or equivalently the value carried by every line of a circuit.
///
/// Line `i` is bit `i`; for circuits of at most 64 lines the low word is the
/// integer code of the state, so line 0 is the least significant bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits([u64; WORDS]);

impl Bits {
    pub const EMPTY: Bits = Bits([0; WORDS]);

    pub fn from_word(w: u64) -> Self {
        let mut b = Self::EMPTY;
        b.0[0] = w;
        b
    }

    pub fn single(i: usize) -> Self {
        let mut b = Self::EMPTY;
        b.insert(i);
        b
    }

    /// Lines `0..n`.
    pub fn range(n: usize) -> Self {
        let mut b = Self::EMPTY;
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub fn from_lines<I: IntoIterator<Item = usize>>(lines: I) -> Self {
        let mut b = Self::EMPTY;
        for i in lines {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < MAX_LINES && (self.0[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_LINES, "line {i} exceeds capacity {MAX_LINES}");
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < MAX_LINES {
            self.0[i >> 6] &= !(1 << (i & 63));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < MAX_LINES, "line {i} exceeds capacity {MAX_LINES}");
        self.0[i >> 6] ^= 1 << (i & 63);
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.insert(i)
        } else {
            self.remove(i)
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    /// True when all set bits of `mask` are also set here.
    #[inline]
    pub fn covers(&self, mask: &Bits) -> bool {
        mask.is_subset(self)
    }

    /// Low 64 lines as an integer code.
    #[inline]
    pub fn word(&self) -> u64 {
        self.0[0]
    }

    /// True when no line at index 64 or above is present.
    pub fn fits_word(&self) -> bool {
        self.0[1..].iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.0.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn last(&self) -> Option<usize> {
        for (k, &w) in self.0.iter().enumerate().rev() {
            if w != 0 {
                return Some(k * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> BitsIter {
        BitsIter { bits: *self, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct BitsIter {
    bits: Bits,
    word: usize,
}

impl Iterator for BitsIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.bits.0[self.word];
            if w != 0 {
                let tz = w.trailing_zeros() as usize;
                self.bits.0[self.word] &= w - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
        }
        None
    }
}

impl FromIterator<usize> for Bits {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Bits::from_lines(iter)
    }
}

macro_rules! bitop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Bits {
            type Output = Bits;
            #[inline]
            fn $f(self, rhs: Bits) -> Bits {
                let mut out = self;
                for (a, b) in out.0.iter_mut().zip(rhs.0.iter()) {
                    *a $op *b;
                }
                out
            }
        }
    };
}

bitop!(BitOr, bitor, |=);
bitop!(BitAnd, bitand, &=);
bitop!(BitXor, bitxor, ^=);

impl Sub for Bits {
    type Output = Bits;
    #[inline]
    fn sub(self, rhs: Bits) -> Bits {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(rhs.0.iter()) {
            *a &= !*b;
        }
        out
    }
}

impl Not for Bits {
    type Output = Bits;
    fn not(self) -> Bits {
        let mut out = self;
        for a in out.0.iter_mut() {
            *a = !*a;
        }
        out
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
