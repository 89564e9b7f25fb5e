use std::fmt;

use crate::bits::{Bits, MAX_LINES};
use crate::error::{Error, Result};

/// Generalized mixed-polarity Toffoli gate `E(t, I, J)`.
///
/// Flips line `target` iff every line in `pos` carries 1 and every line in `neg` carries 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gate {
    target: u16,
    pos: Bits,
    neg: Bits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    Not,
    Cnot,
    Toffoli,
    /// More than two controls.
    Large(usize),
}

impl Gate {
    pub fn new(target: usize, pos: Bits, neg: Bits) -> Result<Gate> {
        if target >= MAX_LINES {
            return Err(Error::Structural(format!("target {target} out of range")));
        }
        if pos.contains(target) || neg.contains(target) {
            return Err(Error::Structural(format!("target {target} is also a control")));
        }
        if !pos.is_disjoint(&neg) {
            return Err(Error::Structural("a line is both a positive and a negative control".into()));
        }
        Ok(Gate { target: target as u16, pos, neg })
    }

    /// Panicking constructor for statically known-good gates.
    pub fn e(target: usize, pos: &[usize], neg: &[usize]) -> Gate {
        Gate::new(target, Bits::from_lines(pos.iter().copied()), Bits::from_lines(neg.iter().copied()))
            .expect("invalid gate")
    }

    pub fn not(t: usize) -> Gate {
        Gate::e(t, &[], &[])
    }

    pub fn cnot(c: usize, t: usize) -> Gate {
        Gate::e(t, &[c], &[])
    }

    pub fn toffoli(a: usize, b: usize, t: usize) -> Gate {
        Gate::e(t, &[a, b], &[])
    }

    /// Positive-control gate `C_{I;t}`.
    pub fn mct(controls: Bits, t: usize) -> Gate {
        Gate::new(t, controls, Bits::EMPTY).expect("invalid gate")
    }

    pub fn target(&self) -> usize {
        self.target as usize
    }

    pub fn pos(&self) -> Bits {
        self.pos
    }

    pub fn neg(&self) -> Bits {
        self.neg
    }

    pub fn controls(&self) -> Bits {
        self.pos | self.neg
    }

    pub fn control_count(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    /// All lines the gate touches.
    pub fn support(&self) -> Bits {
        self.controls().with(self.target())
    }

    pub fn max_line(&self) -> usize {
        self.support().last().unwrap_or(0)
    }

    pub fn kind(&self) -> GateKind {
        match self.control_count() {
            0 => GateKind::Not,
            1 => GateKind::Cnot,
            2 => GateKind::Toffoli,
            k => GateKind::Large(k),
        }
    }

    #[inline]
    pub fn fires(&self, state: &Bits) -> bool {
        state.covers(&self.pos) && state.is_disjoint(&self.neg)
    }

    #[inline]
    pub fn apply(&self, state: &mut Bits) {
        if self.fires(state) {
            state.flip(self.target());
        }
    }

    /// Apply to an integer code; valid when all lines are below 64.
    #[inline]
    pub fn apply_code(&self, x: u64) -> u64 {
        let p = self.pos.word();
        let n = self.neg.word();
        if x & p == p && x & n == 0 {
            x ^ (1u64 << self.target)
        } else {
            x
        }
    }

    /// Same gate with lines renamed through `map`.
    pub fn remap(&self, map: &[usize]) -> Gate {
        let pos = self.pos.iter().map(|i| map[i]).collect();
        let neg = self.neg.iter().map(|i| map[i]).collect();
        Gate::new(map[self.target()], pos, neg).expect("line map must be injective")
    }
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Subscript notation with 1-based lines: `N3`, `C1,2';3`.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.control_count() == 0 {
            return write!(f, "N{}", self.target + 1);
        }
        write!(f, "C")?;
        let mut first = true;
        for i in self.controls().iter() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{}", i + 1)?;
            if self.neg.contains(i) {
                write!(f, "'")?;
            }
        }
        write!(f, ";{}", self.target + 1)
    }
}
