//! Classical cellular automata on periodic lattices: alphabets with a
//! subtracting operation, local rules, reversible lifting and the
//! second-order construction.

mod alphabet;
mod config;
mod evolve;
mod geometry;
pub mod io;
mod rule;

pub use alphabet::{CellAlphabet, SubtractKind, Symbol};
pub use config::Configuration;
pub use evolve::{apply_rule, run_second_order, second_order_step};
pub use geometry::LatticeGeometry;
pub(crate) use rule::decode_env;
pub use rule::{elementary_rule, game_of_life, lift_reversible, moore_offsets, LocalRule, ReversibleRule};
