//! Index reorderings of a matrix of order `d²` written as `X[(a,i),(b,j)]`.

use super::ComplexMatrix;
use crate::error::Result;

/// Which subsystem a partial transpose acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `X^⌐`: entry `(a,i),(b,j)` taken from `(b,i),(a,j)`.
    First,
    /// `X^Γ`: entry `(a,j),(b,i)` taken from `(a,i),(b,j)`, i.e. every
    /// `d × d` block is transposed in place.
    Second,
}

/// Reshuffling `X^R`: output entry at `(a,b),(i,j)` is input entry `(a,i),(b,j)`.
///
/// Each length-`d²` row of `X` becomes a `d × d` block. The map is an involution.
pub fn reshuffle(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = m.require_bipartite()?;
    Ok(m.map_indices(|r, c| {
        let (a, b, i, j) = (r / d, r % d, c / d, c % d);
        (a * d + i, b * d + j)
    }))
}

/// The dual reshuffling: output entry at `(a,i),(b,j)` is input entry `(j,i),(b,a)`.
pub fn reshuffle_dual(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = m.require_bipartite()?;
    Ok(m.map_indices(|r, c| {
        let (a, i, b, j) = (r / d, r % d, c / d, c % d);
        (j * d + i, b * d + a)
    }))
}

pub fn partial_transpose(m: &ComplexMatrix, side: Side) -> Result<ComplexMatrix> {
    let d = m.require_bipartite()?;
    Ok(match side {
        Side::Second => m.map_indices(|r, c| {
            let (a, j, b, i) = (r / d, r % d, c / d, c % d);
            (a * d + i, b * d + j)
        }),
        Side::First => m.map_indices(|r, c| {
            let (a, i, b, j) = (r / d, r % d, c / d, c % d);
            (b * d + i, a * d + j)
        }),
    })
}
