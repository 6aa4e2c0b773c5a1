//! Dense complex matrices and tensors over bipartite `d × d` systems.
//!
//! Indices are 0-based throughout. A composite index over a pair of
//! subsystems is `μ = a·d + i`, so the entry `X[(a,i),(b,j)]` of a matrix of
//! order `d²` lives at row `a·d + i`, column `b·d + j`. (The 1-based
//! convention `μ = (i−1)d + j` shifts every index by one.)
//!
//! Heavy numerics (SVD, matrix products) are delegated to `faer`; the
//! reorderings are plain index permutations and are exact.

mod defect;
mod matrix;
mod polar;
mod reorder;
mod tensor;

pub(crate) mod kernel;

pub use defect::{
    multi_unitarity_check, reordering_defects, two_unitarity_defect, unitarity_defect, MultiUnitarityReport,
    PartitionDefect, DEFAULT_TOL,
};
pub use matrix::ComplexMatrix;
pub use polar::{polar_decompose, PolarFactors};
pub use reorder::{partial_transpose, reshuffle, reshuffle_dual, Side};
pub use tensor::{flattenings, Tensor4};

pub use num_complex::Complex64;
