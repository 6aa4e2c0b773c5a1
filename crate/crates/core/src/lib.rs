//! Orthogonal Latin squares, their quantum counterparts and the search for
//! 2-unitary matrices.
//!
//! - [`linalg`]: dense complex matrices, reshuffling and partial transpose,
//!   polar decomposition, unitarity defects.
//! - [`field`]: GF(p^n) arithmetic.
//! - [`designs`]: Latin squares, orthogonal pairs, quantum squares, orthogonal arrays.
//! - [`states`]: pure states of several qudits, Schmidt decomposition, AME checks.
//! - [`solver`]: the alternating polar iteration and its seeding.

pub mod designs;
pub mod error;
pub mod field;
pub mod linalg;
pub mod solver;
pub mod states;

pub use error::{Error, Result};
