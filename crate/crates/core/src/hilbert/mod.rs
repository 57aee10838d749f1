//! Finite tensor-product state spaces, state vectors and local operators.

pub mod gates;
mod operator;
pub mod random;
mod schmidt;
mod space;
mod state;

pub use operator::{
    apply_local, commutator_defect, commutes_up_to_phase, compose, union_support, LocalOperator, OperatorKind,
    DENSE_SUPPORT_CAP, UNITARY_TOL,
};
pub use schmidt::{bipartite_matrix, schmidt_coefficients, schmidt_rank, SCHMIDT_RANK_TOL};
pub use space::{BasisIndexer, SiteId, SiteSpace, STATE_DIM_CAP};
pub use state::{SnapshotAmplitude, StateSnapshot, StateVector, NORM_TOL};
