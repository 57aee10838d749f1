//! Quantized histories: local transitions built from a classical rule,
//! their commuting product, history evolution and the swap, disentangler
//! and cyclic alternatives.

mod classical;
mod run;
mod schemes;
mod space;
mod transition;

pub use classical::{GlobalClassicalMap, GLOBAL_MAP_CAP};
pub use run::{run_history, run_history_basis, run_history_dense};
pub use schemes::{cyclic_time_step, disentangler, layer_swap, swap_scheme_step};
pub use space::HistorySpace;
pub use transition::{
    build_local_transition, global_step, local_transition_between, local_transitions, max_pairwise_defect,
};
