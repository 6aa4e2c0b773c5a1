use faer::Mat;

use super::{kernel, ComplexMatrix};
use crate::error::Result;

/// Left polar form `M = H·V` with `H` positive semidefinite and `V` unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarFactors {
    pub positive_part: ComplexMatrix,
    pub unitary_part: ComplexMatrix,
}

impl PolarFactors {
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.positive_part.matmul(&self.unitary_part)
    }
}

/// Polar decomposition through the SVD `M = PΣQ†`: `V = PQ†`, `H = PΣP†`.
///
/// At exact rank deficiency `V` is not unique; the factor returned is the one
/// produced by the SVD routine.
pub fn polar_decompose(m: &ComplexMatrix) -> Result<PolarFactors> {
    let (p, sigma, q) = kernel::svd(&m.to_faer())?;
    let n = m.order();
    let p_sigma = Mat::from_fn(n, n, |r, c| p[(r, c)] * sigma[c]);
    let h = &p_sigma * p.adjoint();
    // enforce exact Hermitian symmetry
    let h = Mat::from_fn(n, n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
    let v = &p * q.adjoint();
    Ok(PolarFactors {
        positive_part: ComplexMatrix::from_faer(&h, m.block_dim()),
        unitary_part: ComplexMatrix::from_faer(&v, m.block_dim()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_defect;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unitary_input_has_identity_positive_part() {
        let s = 0.5f64.sqrt();
        let u = ComplexMatrix::from_rows(&[vec![c(s, 0.0), c(0.0, s)], vec![c(0.0, s), c(s, 0.0)]]).unwrap();
        let f = polar_decompose(&u).unwrap();
        assert!(f.positive_part.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        assert!(f.unitary_part.max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn twice_identity() {
        let m = ComplexMatrix::identity(4).scale(c(2.0, 0.0));
        let f = polar_decompose(&m).unwrap();
        assert!(f.positive_part.max_abs_diff(&m) < 1e-12);
        assert!(f.unitary_part.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn rank_deficient_input_still_gives_unitary() {
        let m = ComplexMatrix::from_fn(4, |r, _| c(r as f64, 0.0));
        let f = polar_decompose(&m).unwrap();
        assert!(unitarity_defect(&f.unitary_part) < 1e-12);
        assert!(f.reconstruct().max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn nan_is_a_numeric_error() {
        let mut m = ComplexMatrix::identity(3);
        m.set(0, 0, c(f64::INFINITY, 0.0));
        assert!(matches!(polar_decompose(&m), Err(crate::Error::Numeric(_))));
    }
}
