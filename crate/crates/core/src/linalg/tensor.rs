use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Four-index amplitude tensor `T[i][j][k][l]`, each index in `0..d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4 {
    d: usize,
    entries: Vec<Complex64>,
}

impl Tensor4 {
    pub fn new(d: usize, entries: Vec<Complex64>) -> Result<Self> {
        if d == 0 || entries.len() != d.pow(4) {
            return Err(Error::dim(format!(
                "tensor of local dimension {d} needs {} entries, got {}",
                d.pow(4),
                entries.len()
            )));
        }
        Ok(Self { d, entries })
    }

    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize, usize, usize) -> Complex64) -> Self {
        let entries =
            (0..d.pow(4)).map(|x| f(x / d / d / d, (x / d / d) % d, (x / d) % d, x % d)).collect();
        Self { d, entries }
    }

    /// Inverse of the `X` flattening: `T[i][j][k][l] = X[(i,j),(k,l)]`.
    pub fn from_matrix(x: &ComplexMatrix) -> Result<Self> {
        let d = x.require_bipartite()?;
        Ok(Self { d, entries: x.entries().to_vec() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        let d = self.d;
        self.entries[((i * d + j) * d + k) * d + l]
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self { d: self.d, entries: self.entries.iter().map(|z| z * alpha).collect() }
    }
}

/// The three flattenings `(X, Y, Z)` of a four-index tensor:
/// `X[(i,j),(k,l)]`, `Y[(i,k),(j,l)]`, `Z[(i,l),(k,j)]`, each equal to `T[i][j][k][l]`.
///
/// They correspond to the splittings AB|CD, AC|BD and AD|BC, and satisfy
/// `Y = X^R`, `Z = X^Γ`.
pub fn flattenings(t: &Tensor4) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let d = t.d;
    let x = ComplexMatrix::bipartite_from_fn(d, |i, j, k, l| t.get(i, j, k, l));
    let y = ComplexMatrix::bipartite_from_fn(d, |i, k, j, l| t.get(i, j, k, l));
    let z = ComplexMatrix::bipartite_from_fn(d, |i, l, k, j| t.get(i, j, k, l));
    (x, y, z)
}
