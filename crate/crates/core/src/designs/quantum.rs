use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ols::OrthogonalLatinPair;
use super::latin::LatinSquare;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Deviation from unit norm accepted when building a square.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// `d × d` grid of pure states, each of dimension `local_dim`
/// (`d` for a quantum Latin square, `d²` for quantum orthogonal squares).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumSquare {
    d: usize,
    local_dim: usize,
    /// Row-major: cell `(i, j)` is entry `i·d + j`.
    cells: Vec<Vec<Complex64>>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl QuantumSquare {
    pub fn new(d: usize, local_dim: usize, cells: Vec<Vec<Complex64>>) -> Result<Self> {
        if d == 0 || cells.len() != d * d {
            return Err(Error::dim(format!("a square of order {d} needs {} cells, got {}", d * d, cells.len())));
        }
        for (k, v) in cells.iter().enumerate() {
            if v.len() != local_dim {
                return Err(Error::dim(format!("cell {k} has dimension {}, expected {local_dim}", v.len())));
            }
            let norm = inner(v, v).re.sqrt();
            if (norm - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::Normalization(format!("cell ({}, {}) has norm {norm}", k / d, k % d)));
            }
        }
        Ok(Self { d, local_dim, cells })
    }

    /// Cell `(i, j)` holds row `i·d + j` of `m`, where `d = m.block_dim()`.
    pub fn from_matrix_rows(m: &ComplexMatrix) -> Result<Self> {
        let d = m.require_bipartite()?;
        Self::new(d, d * d, (0..d * d).map(|k| m.row(k).to_vec()).collect())
    }

    /// Each symbol `s` becomes the basis ket `|s⟩`.
    pub fn from_latin(l: &LatinSquare) -> Self {
        let d = l.d();
        let cells = (0..d * d).map(|k| basis(d, l.get(k / d, k % d))).collect();
        Self { d, local_dim: d, cells }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn cell(&self, i: usize, j: usize) -> &[Complex64] {
        &self.cells[i * self.d + j]
    }

    pub fn cells(&self) -> &[Vec<Complex64>] {
        &self.cells
    }

    /// Matrix whose row `i·d + j` is the state in cell `(i, j)`.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.local_dim != self.d * self.d {
            return Err(Error::dim("only bipartite squares flatten to a square matrix"));
        }
        ComplexMatrix::new(self.d * self.d, self.d, self.cells.concat())
    }

    /// Applies `u` to every cell; for bipartite squares `u` typically is `U_A ⊗ U_B`.
    pub fn map_cells(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.order() != self.local_dim {
            return Err(Error::dim("operator order differs from the cell dimension"));
        }
        let n = self.local_dim;
        let cells = self
            .cells
            .iter()
            .map(|v| (0..n).map(|r| (0..n).map(|c| u.get(r, c) * v[c]).sum()).collect())
            .collect();
        Self::new(self.d, n, cells)
    }
}

fn basis(n: usize, k: usize) -> Vec<Complex64> {
    let mut v = vec![zero(); n];
    v[k] = Complex64::new(1.0, 0.0);
    v
}

/// Cell `(r, c)` becomes the product state `|v⟩ ⊗ |s⟩`.
pub fn classical_embed(p: &OrthogonalLatinPair) -> Result<QuantumSquare> {
    super::ols::ols_function_tables(p)?;
    let d = p.d();
    let cells = (0..d * d)
        .map(|k| {
            let (v, s) = p.card(k / d, k % d);
            basis(d * d, v * d + s)
        })
        .collect();
    Ok(QuantumSquare { d, local_dim: d * d, cells })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QolsFamily {
    /// Pairwise orthonormality of all `d²` states.
    Q1Orthonormal,
    /// `Σ_μ |ψ_μ⟩⟨ψ_μ| = I`, i.e. the states span the whole space.
    Q1Complete,
    /// Rows, partial trace over the second party.
    Q2TraceB,
    /// Rows, partial trace over the first party.
    Q2TraceA,
    /// Columns, partial trace over the second party.
    Q3TraceB,
    /// Columns, partial trace over the first party.
    Q3TraceA,
}

impl QolsFamily {
    pub const ALL: [QolsFamily; 6] = [
        QolsFamily::Q1Orthonormal,
        QolsFamily::Q1Complete,
        QolsFamily::Q2TraceB,
        QolsFamily::Q2TraceA,
        QolsFamily::Q3TraceB,
        QolsFamily::Q3TraceA,
    ];
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumViolation {
    pub family: QolsFamily,
    /// Pair of states (Q1), rows (Q2) or columns (Q3) involved; `(0, 0)` for Q1Complete.
    pub indices: (usize, usize),
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QolsReport {
    pub tol: f64,
    /// Largest residual per family, in the order of [`QolsFamily::ALL`].
    pub residuals: Vec<(QolsFamily, f64)>,
    pub violations: Vec<QuantumViolation>,
}

impl QolsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }

    pub fn residual(&self, family: QolsFamily) -> f64 {
        self.residuals.iter().find(|r| r.0 == family).map_or(0.0, |r| r.1)
    }
}

/// `Tr_B |ψ⟩⟨φ|` (`keep_first`) or `Tr_A |ψ⟩⟨φ|` as a `d × d` row-major block.
fn partial_outer(psi: &[Complex64], phi: &[Complex64], d: usize, keep_first: bool) -> Vec<Complex64> {
    let mut out = vec![zero(); d * d];
    for x in 0..d {
        for y in 0..d {
            out[x * d + y] = (0..d)
                .map(|t| {
                    let (a, b) = if keep_first { (x * d + t, y * d + t) } else { (t * d + x, t * d + y) };
                    psi[a] * phi[b].conj()
                })
                .sum();
        }
    }
    out
}

fn frobenius_dev(m: &[Complex64], diag: f64, n: usize) -> f64 {
    m.iter()
        .enumerate()
        .map(|(k, z)| (z - if k / n == k % n { diag } else { 0.0 }).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Checks Q1–Q3 for a bipartite quantum square.
///
/// For each pair of rows `(i, j)`, Q2 requires
/// `Σ_k Tr_B |ψ_ik⟩⟨ψ_jk| = δ_ij I` and the same with `Tr_A`; Q3 is the
/// analogue over columns. Each residual is a Frobenius norm of the deviation.
pub fn qols_verify(q: &QuantumSquare, tol: f64) -> Result<QolsReport> {
    let d = q.d;
    let n = d * d;
    if q.local_dim != n {
        return Err(Error::dim(format!("quantum orthogonal squares need cells of dimension {n}")));
    }
    let mut residuals = Vec::new();
    let mut violations = Vec::new();
    let mut record = |family, indices, residual: f64, worst: &mut f64| {
        *worst = worst.max(residual);
        if residual > tol {
            violations.push(QuantumViolation { family, indices, residual });
        }
    };

    let mut worst = 0.0;
    for mu in 0..n {
        for nu in mu..n {
            let g = inner(&q.cells[mu], &q.cells[nu]);
            let residual = (g - if mu == nu { 1.0 } else { 0.0 }).norm();
            record(QolsFamily::Q1Orthonormal, (mu, nu), residual, &mut worst);
        }
    }
    residuals.push((QolsFamily::Q1Orthonormal, worst));

    let mut frame = vec![zero(); n * n];
    for v in &q.cells {
        for x in 0..n {
            for y in 0..n {
                frame[x * n + y] += v[x] * v[y].conj();
            }
        }
    }
    let mut worst = 0.0;
    record(QolsFamily::Q1Complete, (0, 0), frobenius_dev(&frame, 1.0, n), &mut worst);
    residuals.push((QolsFamily::Q1Complete, worst));

    for (family, by_row, keep_first) in [
        (QolsFamily::Q2TraceB, true, true),
        (QolsFamily::Q2TraceA, true, false),
        (QolsFamily::Q3TraceB, false, true),
        (QolsFamily::Q3TraceA, false, false),
    ] {
        let mut worst = 0.0;
        for i in 0..d {
            for j in i..d {
                let mut acc = vec![zero(); d * d];
                for k in 0..d {
                    let (a, b) = if by_row { (q.cell(i, k), q.cell(j, k)) } else { (q.cell(k, i), q.cell(k, j)) };
                    for (s, t) in acc.iter_mut().zip(partial_outer(a, b, d, keep_first)) {
                        *s += t;
                    }
                }
                let residual = frobenius_dev(&acc, if i == j { 1.0 } else { 0.0 }, d);
                record(family, (i, j), residual, &mut worst);
            }
        }
        residuals.push((family, worst));
    }
    Ok(QolsReport { tol, residuals, violations })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QlsReport {
    pub tol: f64,
    pub max_row_residual: f64,
    pub max_column_residual: f64,
    /// `(is_row, line, k, l, residual)`: states `k` and `l` of that line fail orthonormality.
    pub violations: Vec<(bool, usize, usize, usize, f64)>,
}

impl QlsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every row and every column of a quantum Latin square is an
/// orthonormal basis of the `d`-dimensional space.
pub fn qls_verify(q: &QuantumSquare, tol: f64) -> Result<QlsReport> {
    let d = q.d;
    if q.local_dim != d {
        return Err(Error::dim(format!("quantum Latin squares need cells of dimension {d}")));
    }
    let mut report = QlsReport { tol, max_row_residual: 0.0, max_column_residual: 0.0, violations: Vec::new() };
    for is_row in [true, false] {
        for line in 0..d {
            let state = |k: usize| if is_row { q.cell(line, k) } else { q.cell(k, line) };
            for k in 0..d {
                for l in k..d {
                    let residual = (inner(state(k), state(l)) - if k == l { 1.0 } else { 0.0 }).norm();
                    let slot = if is_row { &mut report.max_row_residual } else { &mut report.max_column_residual };
                    *slot = slot.max(residual);
                    if residual > tol {
                        report.violations.push((is_row, line, k, l, residual));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{cyclic_latin, mols_pair};

    #[test]
    fn classical_embedding_of_order_three() {
        let q = classical_embed(&mols_pair(3).unwrap()).unwrap();
        assert_eq!(q.cell(0, 0)[0], Complex64::new(1.0, 0.0));
        let rep = qols_verify(&q, 1e-12).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.max_residual(), 0.0);
        assert_eq!(rep.residuals.len(), 6);
    }

    #[test]
    fn unnormalized_cell_is_rejected() {
        let cells = vec![vec![Complex64::new(2.0, 0.0)]];
        assert!(matches!(QuantumSquare::new(1, 1, cells), Err(Error::Normalization(_))));
    }

    #[test]
    fn repeated_state_in_a_row_is_located() {
        let mut q = QuantumSquare::from_latin(&cyclic_latin(3).unwrap());
        q.cells[1] = q.cells[0].clone();
        let rep = qls_verify(&q, 1e-12).unwrap();
        assert!(!rep.passed());
        assert!(rep.violations.iter().any(|&(row, line, k, l, _)| row && line == 0 && (k, l) == (0, 1)));
        assert!(qls_verify(&QuantumSquare::from_latin(&cyclic_latin(4).unwrap()), 1e-12).unwrap().passed());
    }

    #[test]
    fn local_rotation_keeps_qols() {
        let s = 0.5f64.sqrt();
        let h = ComplexMatrix::from_real(3, &[s, s, 0.0, s, -s, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let phase = ComplexMatrix::from_fn(3, |r, c| {
            if r == c { Complex64::from_polar(1.0, r as f64) } else { zero() }
        });
        let ua_ub = ComplexMatrix::from_fn(9, |r, c| h.get(r / 3, c / 3) * phase.get(r % 3, c % 3));
        let q = classical_embed(&mols_pair(3).unwrap()).unwrap().map_cells(&ua_ub).unwrap();
        assert!(qols_verify(&q, 1e-12).unwrap().passed());
    }
}
