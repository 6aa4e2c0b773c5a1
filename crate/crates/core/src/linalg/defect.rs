use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{kernel, partial_transpose, reshuffle, ComplexMatrix, Side};
use crate::error::{Error, Result};

/// Default threshold for boolean unitarity checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// `‖M†M − I‖_F`.
pub fn unitarity_defect(m: &ComplexMatrix) -> f64 {
    if m.as_permutation().is_some() {
        return 0.0;
    }
    kernel::unitarity_defect(&m.to_faer())
}

/// Frobenius defect of the integer Gram matrix of a 0/1 matrix.
fn integer_defect(ones: &[(usize, usize)], n: usize) -> f64 {
    let mut by_row = vec![Vec::new(); n];
    for &(r, c) in ones {
        by_row[r].push(c);
    }
    let mut gram = vec![0i64; n * n];
    for cols in &by_row {
        for &a in cols {
            for &b in cols {
                gram[a * n + b] += 1;
            }
        }
    }
    for k in 0..n {
        gram[k * n + k] -= 1;
    }
    (gram.iter().map(|g| g * g).sum::<i64>() as f64).sqrt()
}

/// Largest unitarity defect among `M`, `M^R` and `M^Γ`; zero iff `M` is 2-unitary.
///
/// Permutation matrices take an exact integer path.
pub fn two_unitarity_defect(m: &ComplexMatrix) -> Result<f64> {
    let d = m.require_bipartite()?;
    if let Some(images) = m.as_permutation() {
        let n = m.order();
        let mut worst = 0.0f64;
        for reorder in [reshuffle_index, gamma_index] {
            let ones: Vec<(usize, usize)> =
                images.iter().enumerate().map(|(r, &c)| reorder(d, r, c)).collect();
            worst = worst.max(integer_defect(&ones, n));
        }
        return Ok(worst);
    }
    Ok(kernel::two_unitarity_defect(&m.to_faer(), d))
}

/// Position of input entry `(r, c)` after reshuffling.
fn reshuffle_index(d: usize, r: usize, c: usize) -> (usize, usize) {
    let (a, i, b, j) = (r / d, r % d, c / d, c % d);
    (a * d + b, i * d + j)
}

/// Position of input entry `(r, c)` after the second-side partial transpose.
fn gamma_index(d: usize, r: usize, c: usize) -> (usize, usize) {
    let (a, i, b, j) = (r / d, r % d, c / d, c % d);
    (a * d + j, b * d + i)
}

/// Defect of one bipartition of the `2M` tensor indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionDefect {
    /// Tensor index positions grouped into the row index, in increasing order.
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub defect: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiUnitarityReport {
    pub d: usize,
    pub half_order: usize,
    pub tol: f64,
    /// Factor applied to the tensor so that its Frobenius norm is `√(d^M)`.
    pub scale: f64,
    pub partitions: Vec<PartitionDefect>,
}

impl MultiUnitarityReport {
    pub fn all_passed(&self) -> bool {
        self.partitions.iter().all(|p| p.passed)
    }

    pub fn max_defect(&self) -> f64 {
        self.partitions.iter().map(|p| p.defect).fold(0.0, f64::max)
    }
}

/// Checks every balanced bipartition of the `2M` indices of `t` for unitarity.
///
/// `t` holds `d^(2M)` amplitudes, row-major over `(i_0, …, i_{2M−1})`. A
/// bipartition and its complement give the same condition up to transpose, so
/// only those containing index 0 are listed: 3 for `M = 2`, 10 for `M = 3`.
/// Unitarity is tested up to a global constant: the tensor is first rescaled to
/// Frobenius norm `√(d^M)`, the norm of a unitary of order `d^M`.
pub fn multi_unitarity_check(
    t: &[Complex64],
    d: usize,
    half_order: usize,
    tol: f64,
) -> Result<MultiUnitarityReport> {
    if !(2..=3).contains(&half_order) {
        return Err(Error::Capability(format!(
            "multi-unitarity is supported for M = 2 or 3, not {half_order}"
        )));
    }
    let k = 2 * half_order;
    if d == 0 || t.len() != d.pow(k as u32) {
        return Err(Error::dim(format!(
            "expected {} amplitudes for d = {d}, M = {half_order}, got {}",
            d.pow(k as u32),
            t.len()
        )));
    }
    let side = d.pow(half_order as u32);
    let norm = t.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scale = if norm > 0.0 { (side as f64).sqrt() / norm } else { 1.0 };

    let mut partitions = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask & 1 == 0 || mask.count_ones() as usize != half_order {
            continue;
        }
        let rows: Vec<usize> = (0..k).filter(|&p| mask >> p & 1 == 1).collect();
        let cols: Vec<usize> = (0..k).filter(|&p| mask >> p & 1 == 0).collect();
        let mut entries = vec![Complex64::new(0.0, 0.0); side * side];
        let mut digits = vec![0usize; k];
        for (flat, z) in t.iter().enumerate() {
            let mut x = flat;
            for p in (0..k).rev() {
                digits[p] = x % d;
                x /= d;
            }
            let r = rows.iter().fold(0, |acc, &p| acc * d + digits[p]);
            let c = cols.iter().fold(0, |acc, &p| acc * d + digits[p]);
            entries[r * side + c] = z * scale;
        }
        let m = ComplexMatrix::new(side, d, entries)?;
        let defect = unitarity_defect(&m);
        partitions.push(PartitionDefect { row_indices: rows, col_indices: cols, defect, passed: defect <= tol });
    }
    Ok(MultiUnitarityReport { d, half_order, tol, scale, partitions })
}

/// Convenience for `M = 2`: the three conditions on a matrix of order `d²`,
/// in the order `M`, `M^R`, `M^Γ`.
pub fn reordering_defects(m: &ComplexMatrix) -> Result<[f64; 3]> {
    Ok([
        unitarity_defect(m),
        unitarity_defect(&reshuffle(m)?),
        unitarity_defect(&partial_transpose(m, Side::Second)?),
    ])
}
