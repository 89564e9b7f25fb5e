//! Circuit, truth-table and permutation text formats.

mod table;
mod tfc;

pub use table::{emit_permutation, parse_permutation, TruthTableFile};
pub use tfc::{emit_tfc, parse_tfc, CircuitFile};
