use std::fmt;

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square complex matrix stored row-major.
///
/// `block_dim` is the local dimension `d` used by the bipartite reorderings;
/// it must satisfy `order == block_dim²` before those are requested.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRecord", into = "MatrixRecord")]
pub struct ComplexMatrix {
    order: usize,
    block_dim: usize,
    entries: Vec<Complex64>,
}

/// On-disk layout: `{ "order": n, "block_dim": d, "entries": [[re, im], ...] }`.
#[derive(Serialize, Deserialize)]
struct MatrixRecord {
    order: usize,
    block_dim: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixRecord> for ComplexMatrix {
    type Error = Error;

    fn try_from(rec: MatrixRecord) -> Result<Self> {
        let entries = rec.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(rec.order, rec.block_dim, entries)
    }
}

impl From<ComplexMatrix> for MatrixRecord {
    fn from(m: ComplexMatrix) -> Self {
        MatrixRecord {
            order: m.order,
            block_dim: m.block_dim,
            entries: m.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Integer square root when `n` is a perfect square.
pub(crate) fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r.checked_mul(r) == Some(n)).then_some(r)
}

impl ComplexMatrix {
    pub fn new(order: usize, block_dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if order == 0 || block_dim == 0 {
            return Err(Error::dim("order and block_dim must be positive"));
        }
        if entries.len() != order * order {
            return Err(Error::dim(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        Ok(Self { order, block_dim, entries })
    }

    /// Builds a matrix, taking `block_dim = √order` when `order` is a perfect
    /// square and `order` otherwise.
    pub fn square(order: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::new(order, exact_sqrt(order).unwrap_or(order), entries)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let entries = (0..order * order).map(|k| f(k / order, k % order)).collect();
        Self { order, block_dim: exact_sqrt(order).unwrap_or(order), entries }
    }

    /// Matrix of order `d²` with entries given in 4-index form `f(a, i, b, j) = X[(a,i),(b,j)]`.
    pub fn bipartite_from_fn(
        d: usize,
        mut f: impl FnMut(usize, usize, usize, usize) -> Complex64,
    ) -> Self {
        let n = d * d;
        let entries =
            (0..n * n).map(|k| f(k / n / d, (k / n) % d, (k % n) / d, k % d)).collect();
        Self { order: n, block_dim: d, entries }
    }

    pub fn from_real(order: usize, values: &[f64]) -> Result<Self> {
        Self::square(order, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::dim("rows must all have length equal to the row count"));
        }
        Self::square(n, rows.concat())
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |r, c| Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0))
    }

    /// Permutation matrix with a single 1 at `(row, images[row])` in every row.
    pub fn permutation(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &c in images {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::dim(format!("{images:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Self::from_fn(n, |r, c| Complex64::new(if images[r] == c { 1.0 } else { 0.0 }, 0.0)))
    }

    /// If every entry is exactly 0 or 1 and the ones form a permutation,
    /// returns `images` with `images[row] = column of the 1`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.order;
        let mut images = vec![usize::MAX; n];
        let mut col_used = vec![false; n];
        for (k, z) in self.entries.iter().enumerate() {
            if z.im != 0.0 || (z.re != 0.0 && z.re != 1.0) {
                return None;
            }
            if z.re == 1.0 {
                let (r, c) = (k / n, k % n);
                if images[r] != usize::MAX || col_used[c] {
                    return None;
                }
                images[r] = c;
                col_used[c] = true;
            }
        }
        images.iter().all(|&c| c != usize::MAX).then_some(images)
    }

    pub fn with_block_dim(mut self, block_dim: usize) -> Result<Self> {
        if block_dim == 0 {
            return Err(Error::dim("block_dim must be positive"));
        }
        self.block_dim = block_dim;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    /// True when `order == block_dim²`, i.e. bipartite reorderings apply.
    pub fn is_bipartite(&self) -> bool {
        self.block_dim.checked_mul(self.block_dim) == Some(self.order)
    }

    pub(crate) fn require_bipartite(&self) -> Result<usize> {
        if self.is_bipartite() {
            Ok(self.block_dim)
        } else {
            Err(Error::dim(format!(
                "order {} is not the square of block_dim {}",
                self.order, self.block_dim
            )))
        }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.order + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.order + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.order, other.order, "order mismatch");
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        self.map_indices(|r, c| (c, r))
    }

    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        t.entries.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|z| *z *= alpha);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let mut out = self.clone();
        out.entries.iter_mut().zip(&other.entries).for_each(|(a, b)| *a += b);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let mut out = self.clone();
        out.entries.iter_mut().zip(&other.entries).for_each(|(a, b)| *a -= b);
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        Self::from_faer(&(self.to_faer() * other.to_faer()), self.block_dim)
    }

    /// Output entry `(r, c)` is the input entry at `src(r, c)`.
    pub(crate) fn map_indices(&self, src: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let n = self.order;
        let entries = (0..n * n)
            .map(|k| {
                let (r, c) = src(k / n, k % n);
                self.entries[r * n + c]
            })
            .collect();
        Self { order: n, block_dim: self.block_dim, entries }
    }

    pub(crate) fn to_faer(&self) -> Mat<Complex64> {
        let n = self.order;
        Mat::from_fn(n, n, |r, c| self.entries[r * n + c])
    }

    pub(crate) fn from_faer(m: &Mat<Complex64>, block_dim: usize) -> Self {
        let n = m.nrows();
        let entries = (0..n * n).map(|k| m[(k / n, k % n)]).collect();
        Self { order: n, block_dim, entries }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix(order={}, block_dim={})", self.order, self.block_dim)?;
        for r in 0..self.order {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| if z.im == 0.0 { format!("{:.4}", z.re) } else { format!("{z:.4}") })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
