use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::ComplexMatrix;

/// Magnitudes of the nonzero entries of `m`, clustered.
///
/// Entries with `|z| > tol` are sorted by magnitude; a cluster collects
/// consecutive magnitudes within `tol` of its smallest member and is reported
/// by its mean together with its size. Clusters come in increasing order.
pub fn amplitude_profile(m: &ComplexMatrix, tol: f64) -> Vec<(f64, usize)> {
    let mut mags: Vec<f64> = m.entries().iter().map(|z| z.norm()).filter(|&x| x > tol).collect();
    mags.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for x in mags {
        match out.last_mut() {
            Some((sum, count, first)) if x - *first <= tol => {
                *sum += x;
                *count += 1;
            }
            _ => out.push((x, 1, x)),
        }
    }
    out.into_iter().map(|(sum, count, _)| (sum / count as f64, count)).collect()
}

/// The amplitudes and phase unit of the known order-6 solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenConstants {
    /// `½√(1 − 1/√5)`.
    pub a: f64,
    /// `½√(1 + 1/√5)`.
    pub b: f64,
    /// `1/√2`.
    pub c: f64,
    /// `(1 + √5)/2`.
    pub phi: f64,
    /// `exp(iπ/10)`.
    pub omega: Complex64,
}

impl GoldenConstants {
    pub fn new() -> Self {
        let r5 = 5f64.sqrt();
        Self {
            a: 0.5 * (1.0 - 1.0 / r5).sqrt(),
            b: 0.5 * (1.0 + 1.0 / r5).sqrt(),
            c: std::f64::consts::FRAC_1_SQRT_2,
            phi: (1.0 + r5) / 2.0,
            omega: Complex64::from_polar(1.0, std::f64::consts::PI / 10.0),
        }
    }
}

impl Default for GoldenConstants {
    fn default() -> Self {
        Self::new()
    }
}
