//! Allocation-light routines on `faer` matrices used by the iterative search.
//! The public `ComplexMatrix` API is the reference; these must agree with it.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) fn is_finite(m: &Mat<Complex64>) -> bool {
    (0..m.ncols()).all(|c| (0..m.nrows()).all(|r| m[(r, c)].re.is_finite() && m[(r, c)].im.is_finite()))
}

/// `(P, σ, Q)` with `m = P·diag(σ)·Q†`.
pub(crate) fn svd(m: &Mat<Complex64>) -> Result<(Mat<Complex64>, Vec<f64>, Mat<Complex64>)> {
    if !is_finite(m) {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }
    let s = m.svd().map_err(|e| Error::Numeric(format!("singular value decomposition failed: {e:?}")))?;
    let sigma = s.S().column_vector().iter().map(|z| z.re).collect();
    Ok((s.U().to_owned(), sigma, s.V().to_owned()))
}

pub(crate) fn polar_unitary(m: &Mat<Complex64>) -> Result<Mat<Complex64>> {
    let (p, _, q) = svd(m)?;
    Ok(p * q.adjoint())
}

pub(crate) fn reshuffle(m: &Mat<Complex64>, d: usize) -> Mat<Complex64> {
    let n = d * d;
    Mat::from_fn(n, n, |r, c| m[((r / d) * d + c / d, (r % d) * d + c % d)])
}

pub(crate) fn partial_transpose_second(m: &Mat<Complex64>, d: usize) -> Mat<Complex64> {
    let n = d * d;
    Mat::from_fn(n, n, |r, c| m[((r / d) * d + c % d, (c / d) * d + r % d)])
}

pub(crate) fn unitarity_defect(m: &Mat<Complex64>) -> f64 {
    let n = m.nrows();
    let mut g = m.adjoint() * m;
    for k in 0..n {
        g[(k, k)] -= Complex64::new(1.0, 0.0);
    }
    g.norm_l2()
}

pub(crate) fn two_unitarity_defect(m: &Mat<Complex64>, d: usize) -> f64 {
    unitarity_defect(m)
        .max(unitarity_defect(&reshuffle(m, d)))
        .max(unitarity_defect(&partial_transpose_second(m, d)))
}
