//! Biased maker-breaker achievement games on the square and triangular boards.
//!
//! The maker marks `a` cells per turn and tries to occupy a congruent copy of
//! a goal polyform; the breaker marks `b` cells per turn and tries to stop
//! him. This crate checks the certificates that settle such games (proof
//! sequences, pavings, priority strategies, composition bounds) and runs a
//! small exhaustive solver to cross-check them.

pub mod board;
pub mod bounds;
pub mod catalog;
pub mod error;
pub mod paving;
pub mod polyform;
pub mod priority;
pub mod proofseq;
pub mod solver;
pub mod stages;
mod text;

pub use board::{BoardKind, Cell, Orient, Parity, Symmetry, Window};
pub use error::{Error, Result};
pub use polyform::{Placement, Polyform};
