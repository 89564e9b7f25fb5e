//! Constructions that trade extra zeroed lines for fewer gates or lower depth.

mod cleanup;
mod cover;
mod lupanov;
mod network;

pub use cleanup::{check_ancilla, cleanup_by_mirroring, embed_mapping, min_ancilla, synth_mapping};
pub use cover::face_cover_synth;
pub use lupanov::{lupanov_synth, sdnf_synth, LupanovParams};
pub use network::{
    build_conjunction_network, build_xor_network, conjunction_gates, conjunction_lines, log_depth_copy, log_depth_xor,
    AncillaBudget, ConjunctionNetwork,
};
