use faer::Mat;
use num_complex::Complex64;

use super::PureState;
use crate::error::{Error, Result};
use crate::linalg::{kernel, unitarity_defect, ComplexMatrix};

/// Schmidt coefficients below this fraction of the largest are not counted in the rank.
pub const RANK_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtDecomposition {
    /// Nonincreasing, summing to 1, length `min(d_A, d_B)`.
    pub lambdas: Vec<f64>,
    pub rank: usize,
    /// Columns are the Schmidt vectors of side A (order `d_A`).
    pub left_basis: ComplexMatrix,
    /// Columns are the conjugated Schmidt vectors of side B (order `d_B`).
    pub right_basis: ComplexMatrix,
}

fn to_matrix(m: &Mat<Complex64>) -> Result<ComplexMatrix> {
    let n = m.nrows();
    ComplexMatrix::square(n, (0..n * n).map(|k| m[(k / n, k % n)]).collect())
}

/// Factorizes `ψ = Σ √λ_i |a_i⟩|b_i⟩` across the split `side | complement`.
pub fn schmidt_decompose(psi: &PureState, side: &[usize]) -> Result<SchmidtDecomposition> {
    let (a, b) = psi.split(side)?;
    let (dr, dc, c) = psi.coefficient_matrix(&a, &b);
    let cm = Mat::from_fn(dr, dc, |r, k| c[r * dc + k]);
    let (p, sigma, q) = kernel::svd(&cm)?;
    let lambdas: Vec<f64> = sigma.iter().map(|s| s * s).collect();
    let top = lambdas.first().copied().unwrap_or(0.0);
    let rank = lambdas.iter().filter(|&&l| l > RANK_TOL * top).count();
    Ok(SchmidtDecomposition { lambdas, rank, left_basis: to_matrix(&p)?, right_basis: to_matrix(&q)? })
}

/// `−Σ λ ln λ`, with `0 ln 0 = 0`.
pub fn entanglement_entropy(s: &SchmidtDecomposition) -> f64 {
    -s.lambdas.iter().filter(|&&l| l > 0.0).map(|&l| l * l.ln()).sum::<f64>()
}

/// `(U_A ⊗ U_B) Σ √λ_i |i⟩|i⟩` as a two-party state of dimensions `d × d`.
pub fn state_from_schmidt(lambda: &[f64], u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<PureState> {
    let d = lambda.len();
    let total: f64 = lambda.iter().sum();
    if d == 0 || lambda.iter().any(|&l| l < 0.0 || !l.is_finite()) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::Normalization(format!("{lambda:?} is not a probability vector")));
    }
    for u in [u_a, u_b] {
        if u.order() != d {
            return Err(Error::dim(format!("local unitaries must have order {d}")));
        }
        if unitarity_defect(u) > 1e-10 {
            return Err(Error::Numeric("local operator is not unitary".into()));
        }
    }
    let amps = (0..d * d)
        .map(|k| {
            let (x, y) = (k / d, k % d);
            (0..d).map(|i| u_a.get(x, i) * u_b.get(y, i) * lambda[i].sqrt()).sum()
        })
        .collect();
    PureState::new(vec![d, d], amps)
}

/// Fubini–Study distance `arccos √λ_max` to the nearest product state across the split.
pub fn closest_separable_distance(psi: &PureState, side: &[usize]) -> Result<f64> {
    let s = schmidt_decompose(psi, side)?;
    Ok(s.lambdas[0].sqrt().min(1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, LN_2};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> PureState {
        let s = 0.5f64.sqrt();
        PureState::new(vec![2, 2], vec![c(s), c(0.0), c(0.0), c(s)]).unwrap()
    }

    #[test]
    fn bell_state() {
        let s = schmidt_decompose(&bell(), &[0]).unwrap();
        assert!((s.lambdas[0] - 0.5).abs() < 1e-15 && (s.lambdas[1] - 0.5).abs() < 1e-15);
        assert_eq!(s.rank, 2);
        assert!((entanglement_entropy(&s) - LN_2).abs() < 1e-15);
        assert!((closest_separable_distance(&bell(), &[1]).unwrap() - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn product_state() {
        let psi = PureState::basis(vec![2, 2], &[0, 0]).unwrap();
        let s = schmidt_decompose(&psi, &[0]).unwrap();
        assert_eq!(s.lambdas, vec![1.0, 0.0]);
        assert_eq!(s.rank, 1);
        assert_eq!(entanglement_entropy(&s), 0.0);
        assert_eq!(closest_separable_distance(&psi, &[0]).unwrap(), 0.0);
    }

    #[test]
    fn hadamard_coefficients() {
        // coefficient matrix H₂/2: (|00⟩ + |01⟩ + |10⟩ − |11⟩)/2
        let psi = PureState::new(vec![2, 2], vec![c(0.5), c(0.5), c(0.5), c(-0.5)]).unwrap();
        let s = schmidt_decompose(&psi, &[0]).unwrap();
        assert!((s.lambdas[0] - 0.5).abs() < 1e-15 && (s.lambdas[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn qutrit_maximally_entangled() {
        let id = ComplexMatrix::identity(3);
        let third = 1.0 / 3.0;
        let psi = state_from_schmidt(&[third, third, third], &id, &id).unwrap();
        assert!((entanglement_entropy(&schmidt_decompose(&psi, &[0]).unwrap()) - 3f64.ln()).abs() < 1e-14);
        let dist = closest_separable_distance(&psi, &[0]).unwrap();
        assert!((dist - (1.0 / 3f64.sqrt()).acos()).abs() < 1e-14);
    }

    #[test]
    fn two_term_schmidt_form() {
        let x: f64 = 0.3;
        let id = ComplexMatrix::identity(2);
        let psi = state_from_schmidt(&[x, 1.0 - x], &id, &id).unwrap();
        let a = psi.amplitudes();
        assert!((a[0].re - x.sqrt()).abs() < 1e-15 && (a[3].re - (1.0 - x).sqrt()).abs() < 1e-15);
        assert_eq!((a[1], a[2]), (c(0.0), c(0.0)));
    }

    #[test]
    fn improper_lambda() {
        let id = ComplexMatrix::identity(2);
        assert!(matches!(state_from_schmidt(&[0.5, 0.6], &id, &id), Err(Error::Normalization(_))));
        assert!(state_from_schmidt(&[0.5, 0.5], &ComplexMatrix::identity(3), &id).is_err());
    }
}
