use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{reduced_density, PureState};
use crate::designs::{ols_function_tables, OrthogonalLatinPair};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub k: usize,
    pub tol: f64,
    /// Each kept subset with `‖ρ − I/D‖_F`.
    pub subsets: Vec<(Vec<usize>, f64)>,
}

impl UniformityReport {
    pub fn passed(&self) -> bool {
        self.subsets.iter().all(|s| s.1 <= self.tol)
    }

    pub fn max_residual(&self) -> f64 {
        self.subsets.iter().map(|s| s.1).fold(0.0, f64::max)
    }
}

fn subsets_of(n: usize, k: usize, must_contain_zero: bool) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k && (!must_contain_zero || m & 1 == 1))
        .map(|m| (0..n).filter(|p| m >> p & 1 == 1).collect())
        .collect()
}

fn residuals(psi: &PureState, subsets: Vec<Vec<usize>>) -> Result<Vec<(Vec<usize>, f64)>> {
    subsets
        .into_iter()
        .map(|s| Ok((s.clone(), reduced_density(psi, &s)?.distance_to_maximally_mixed())))
        .collect()
}

/// Checks every reduction to `k` parties, `1 ≤ k ≤ ⌊N/2⌋`, for maximal mixedness.
pub fn k_uniform_check(psi: &PureState, k: usize, tol: f64) -> Result<UniformityReport> {
    let n = psi.parties();
    if k < 1 || k > n / 2 {
        return Err(Error::Range(format!("uniformity degree {k} outside 1..={} for {n} parties", n / 2)));
    }
    Ok(UniformityReport { k, tol, subsets: residuals(psi, subsets_of(n, k, false))? })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmeReport {
    pub tol: f64,
    /// One entry per balanced bipartition, listed by the side containing party 0.
    /// For four parties: `{0,1}`, `{0,2}`, `{0,3}`.
    pub splits: Vec<(Vec<usize>, f64)>,
    /// Set for odd `N`, where only `(N−1)/2`-uniformity was checked.
    pub odd_parties: bool,
}

impl AmeReport {
    pub fn passed(&self) -> bool {
        self.splits.iter().all(|s| s.1 <= self.tol)
    }

    pub fn max_residual(&self) -> f64 {
        self.splits.iter().map(|s| s.1).fold(0.0, f64::max)
    }
}

/// Absolute maximal entanglement: every balanced split is maximally entangled.
///
/// All residuals are reported even after a failure.
pub fn ame_check(psi: &PureState, tol: f64) -> Result<AmeReport> {
    let d = psi.dims()[0];
    if psi.dims().iter().any(|&x| x != d) {
        return Err(Error::dim(format!("AME needs equal local dimensions, got {:?}", psi.dims())));
    }
    let n = psi.parties();
    if n < 2 {
        return Err(Error::Range("AME needs at least two parties".into()));
    }
    let (subsets, odd) = if n % 2 == 0 {
        (subsets_of(n, n / 2, true), false)
    } else {
        (subsets_of(n, (n - 1) / 2, false), true)
    };
    Ok(AmeReport { tol, splits: residuals(psi, subsets)?, odd_parties: odd })
}

/// `(1/d) Σ_{r,c} |r⟩|c⟩|v(r,c)⟩|s(r,c)⟩`.
pub fn ame_from_ols(p: &OrthogonalLatinPair) -> Result<PureState> {
    ols_function_tables(p)?;
    let d = p.d();
    let mut amps = vec![Complex64::new(0.0, 0.0); d.pow(4)];
    for r in 0..d {
        for c in 0..d {
            let (v, s) = p.card(r, c);
            amps[((r * d + c) * d + v) * d + s] = Complex64::new(1.0 / d as f64, 0.0);
        }
    }
    PureState::new(vec![d; 4], amps)
}

/// `(1/d) Σ_{ij} |i⟩|j⟩|ψ_ij⟩` with `|ψ_ij⟩` the row `i·d + j` of `u`.
///
/// For non-unitary `u` the result is rescaled to unit norm.
pub fn state_from_two_unitary(u: &ComplexMatrix) -> Result<PureState> {
    let d = u.require_bipartite()?;
    let amps: Vec<Complex64> = u.entries().iter().map(|z| z / d as f64).collect();
    match PureState::new(vec![d; 4], amps.clone()) {
        Ok(s) => Ok(s),
        Err(Error::Normalization(_)) => PureState::normalized(vec![d; 4], amps),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{mols_pair, ols_to_permutation};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn order_three_pair_gives_ame() {
        let psi = ame_from_ols(&mols_pair(3).unwrap()).unwrap();
        let rep = ame_check(&psi, 1e-12).unwrap();
        assert_eq!(rep.splits.len(), 3);
        assert!(rep.passed());
        let uni = k_uniform_check(&psi, 2, 1e-12).unwrap();
        assert_eq!(uni.subsets.len(), 6);
        assert!(uni.passed());
        let rho = reduced_density(&psi, &[0, 2]).unwrap();
        assert!(rho.distance_to_maximally_mixed() < 1e-12);
    }

    #[test]
    fn permutation_route_agrees_with_pair_route() {
        let p = mols_pair(3).unwrap();
        let via_matrix = state_from_two_unitary(&ols_to_permutation(&p).unwrap().transpose()).unwrap();
        assert_eq!(via_matrix, ame_from_ols(&p).unwrap());
    }

    #[test]
    fn ghz_is_one_uniform() {
        let s = 0.5f64.sqrt();
        let mut amps = vec![c(0.0); 8];
        amps[0] = c(s);
        amps[7] = c(s);
        let ghz = PureState::new(vec![2, 2, 2], amps).unwrap();
        assert!(k_uniform_check(&ghz, 1, 1e-12).unwrap().passed());
        let rep = ame_check(&ghz, 1e-12).unwrap();
        assert!(rep.odd_parties && rep.passed());
        assert!(matches!(k_uniform_check(&ghz, 2, 1e-12), Err(Error::Range(_))));
    }

    #[test]
    fn product_state_is_not_two_uniform() {
        let psi = PureState::basis(vec![2; 4], &[0, 0, 0, 0]).unwrap();
        let rep = k_uniform_check(&psi, 2, 1e-6).unwrap();
        assert!(!rep.passed());
        assert!(rep.subsets.iter().all(|s| s.1 > 0.5));
    }

    #[test]
    fn identity_fails_only_the_middle_split() {
        let rep = ame_check(&state_from_two_unitary(&ComplexMatrix::identity(4)).unwrap(), 1e-8).unwrap();
        assert_eq!(rep.splits.len(), 3);
        assert!(rep.splits[0].1 < 1e-15);
        assert!(rep.splits[1].1 > 0.1 && rep.splits[2].1 < 1e-15);
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let psi = PureState::basis(vec![2, 3], &[0, 0]).unwrap();
        assert!(matches!(ame_check(&psi, 1e-8), Err(Error::Dimension(_))));
    }
}
