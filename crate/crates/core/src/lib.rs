//! Quantized cellular automata with history layers, partitioned block
//! automata, and fermionic lattice-gas algebra at desk scale.
//!
//! * [`lattice`]: classical rules, reversible lifting, second-order scheme.
//! * [`hilbert`]: tensor-product states and local operators.
//! * [`history`]: unitary history evolution built from local transitions.
//! * [`partition`]: Margolus-partitioned automata and the clone gate.
//! * [`qlga`]: qubots, quantum walks and Fock-space products.

pub mod error;
pub mod hilbert;
pub mod history;
pub mod lattice;
pub mod partition;
pub mod qlga;

pub use error::{Error, Result};
