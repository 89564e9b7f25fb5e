//! Reversible circuit synthesis over NOT, CNOT and multiple-control Toffoli gates.
//!
//! The crate covers permutation synthesis by conjugation, a rewrite calculus for gate
//! count reduction, ancilla-based constructions, and GF(2^n) discrete-logarithm
//! benchmark tables. See the `examples/` directory for a tour of each capability.

pub mod ancilla;
pub mod bits;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod io;
pub mod model;
pub mod perm;
pub mod reduce;
pub mod synth;

pub use bits::Bits;
pub use error::{Error, Result};
pub use model::{BooleanMapping, Circuit, CostReport, Gate, Weights};
pub use perm::{Parity, Permutation, Transposition};
