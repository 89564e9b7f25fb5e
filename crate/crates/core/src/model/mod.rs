//! Gates, circuits, evaluation semantics and cost metrics.
//!
//! Line `i` of a circuit is bit `i` of the integer code of a state, so the first line is
//! the least significant bit.

mod circuit;
mod cost;
mod gate;
mod mapping;

pub use circuit::{Circuit, DENSE_LIMIT};
pub use cost::{CostReport, Weights};
pub use gate::{Gate, GateKind};
pub use mapping::BooleanMapping;
