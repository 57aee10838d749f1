//! Lattice-gas side: qubots and coined walks, multi-particle products with
//! exchange statistics, Fock-space grading and the relabeling of fermionic
//! space-time occupations as automaton site states.

mod fock;
mod identification;
mod qubot;
mod tables;

pub use fock::{
    fock_space, grade_dims, symmetric_product, tensor_product, wedge, FockState, Statistics, DEFAULT_N_MAX,
};
pub use identification::{
    basis_clone_overlap, erasure_map, ket_label, qca_space, qca_to_qlga, qlga_to_qca, site_symbol,
    trivial_history_state, SITE_LABELS,
};
pub use qubot::{
    coined_walk_step, continuous_qubot, position_distribution, qubot_snapshots, qubot_step, run_walk, Coin, QubotSpace,
    SnapshotRow,
};
pub use tables::wedge_tables;
