//! Pure states of `N` qudits, Schmidt analysis and partial traces.
//!
//! Subsystems are numbered `0..N` in tensor index order, so a state of four
//! parties `ABCD` has amplitudes `T[i][j][k][l]` at flat index
//! `((i·d_B + j)·d_C + k)·d_D + l`.

mod ame;
mod schmidt;

pub use ame::{
    ame_check, ame_from_ols, k_uniform_check, state_from_two_unitary, AmeReport, UniformityReport,
};
pub use schmidt::{
    closest_separable_distance, entanglement_entropy, schmidt_decompose, state_from_schmidt,
    SchmidtDecomposition, RANK_TOL,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::designs::NORMALIZATION_TOL;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRecord", into = "StateRecord")]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

/// On-disk layout: `{ "dims": [d, ...], "amplitudes": [[re, im], ...] }`.
#[derive(Serialize, Deserialize)]
struct StateRecord {
    dims: Vec<usize>,
    amplitudes: Vec<[f64; 2]>,
}

impl TryFrom<StateRecord> for PureState {
    type Error = Error;

    fn try_from(r: StateRecord) -> Result<Self> {
        PureState::new(r.dims, r.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }
}

impl From<PureState> for StateRecord {
    fn from(s: PureState) -> Self {
        StateRecord { dims: s.dims, amplitudes: s.amplitudes.iter().map(|z| [z.re, z.im]).collect() }
    }
}

fn check_shape(dims: &[usize], len: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::dim("a state needs at least one subsystem, each of positive dimension"));
    }
    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).ok_or_else(|| Error::dim("too large"))?;
    if total != len {
        return Err(Error::dim(format!("dims {dims:?} need {total} amplitudes, got {len}")));
    }
    Ok(())
}

impl PureState {
    /// Requires unit norm within [`NORMALIZATION_TOL`].
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_shape(&dims, amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization(format!("state has norm {norm}")));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_shape(&dims, amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Normalization(format!("cannot normalize a vector of norm {norm}")));
        }
        Ok(Self { dims, amplitudes: amplitudes.into_iter().map(|z| z / norm).collect() })
    }

    /// Computational basis state `|digits⟩`.
    pub fn basis(dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.len() || digits.iter().zip(&dims).any(|(x, d)| x >= d) {
            return Err(Error::Range(format!("basis label {digits:?} does not fit dims {dims:?}")));
        }
        let total: usize = dims.iter().product();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); total];
        amplitudes[digits.iter().zip(&dims).fold(0, |acc, (x, d)| acc * d + x)] = Complex64::new(1.0, 0.0);
        Self::new(dims, amplitudes)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validates `side` and returns it sorted with its complement.
    fn split(&self, side: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.parties();
        let mut a = side.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != side.len() || a.iter().any(|&p| p >= n) {
            return Err(Error::Split(format!("{side:?} is not a set of subsystems of a {n}-party state")));
        }
        if a.is_empty() || a.len() == n {
            return Err(Error::Split("both sides of a bipartition must be nonempty".into()));
        }
        let b = (0..n).filter(|p| !a.contains(p)).collect();
        Ok((a, b))
    }

    /// Coefficient matrix `C[x][y]` with `x` running over `rows` and `y` over
    /// `cols`, each composite index in increasing subsystem order.
    fn coefficient_matrix(&self, rows: &[usize], cols: &[usize]) -> (usize, usize, Vec<Complex64>) {
        let dr: usize = rows.iter().map(|&p| self.dims[p]).product();
        let dc: usize = cols.iter().map(|&p| self.dims[p]).product();
        let mut c = vec![Complex64::new(0.0, 0.0); dr * dc];
        let n = self.parties();
        let mut digits = vec![0usize; n];
        for (flat, z) in self.amplitudes.iter().enumerate() {
            let mut x = flat;
            for p in (0..n).rev() {
                digits[p] = x % self.dims[p];
                x /= self.dims[p];
            }
            let r = rows.iter().fold(0, |acc, &p| acc * self.dims[p] + digits[p]);
            let k = cols.iter().fold(0, |acc, &p| acc * self.dims[p] + digits[p]);
            c[r * dc + k] = *z;
        }
        (dr, dc, c)
    }
}

/// Reduced state of a subset of subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    /// Dimensions of the kept subsystems, in increasing subsystem order.
    pub dims: Vec<usize>,
    pub matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.order()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|k| self.matrix.get(k, k)).sum()
    }

    /// `‖ρ − I/D‖_F`.
    pub fn distance_to_maximally_mixed(&self) -> f64 {
        let n = self.dim();
        let mixed = ComplexMatrix::identity(n).scale(Complex64::new(1.0 / n as f64, 0.0));
        self.matrix.sub(&mixed).frobenius_norm()
    }

    pub fn rank(&self, rel_tol: f64) -> Result<usize> {
        let (_, s, _) = crate::linalg::kernel::svd(&self.matrix.to_faer())?;
        let top = s.first().copied().unwrap_or(0.0);
        Ok(s.iter().filter(|&&x| x > rel_tol * top).count())
    }
}

/// `Tr` over every subsystem not in `keep`.
pub fn reduced_density(psi: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let (a, b) = psi.split(keep)?;
    let (dr, dc, c) = psi.coefficient_matrix(&a, &b);
    let entries = (0..dr * dr)
        .map(|k| {
            let (x, y) = (k / dr, k % dr);
            (0..dc).map(|t| c[x * dc + t] * c[y * dc + t].conj()).sum()
        })
        .collect();
    let dims = a.iter().map(|&p| psi.dims[p]).collect();
    Ok(DensityMatrix { dims, matrix: ComplexMatrix::square(dr, entries)? })
}
