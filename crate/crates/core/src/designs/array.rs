use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::latin::LatinSquare;
use super::ols::OrthogonalLatinPair;
use super::quantum::QuantumSquare;
use crate::error::{Error, Result};

/// Classical `OA(runs, factors, levels, strength)` as a `runs × factors` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalArray {
    pub levels: usize,
    pub strength: usize,
    pub rows: Vec<Vec<usize>>,
}

/// Quantum orthogonal array: `runs` states on `classical + quantum` parties of
/// dimension `levels`, amplitudes row-major over the parties.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumOrthogonalArray {
    pub levels: usize,
    pub strength: usize,
    pub classical: usize,
    pub quantum: usize,
    pub rows: Vec<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrayViolation {
    /// Columns (classical) or kept parties (quantum) of the failing projection.
    pub columns: Vec<usize>,
    pub detail: String,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrayReport {
    pub projections_checked: usize,
    pub violations: Vec<ArrayViolation>,
}

impl ArrayReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl OrthogonalArray {
    pub fn runs(&self) -> usize {
        self.rows.len()
    }

    pub fn factors(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Rows `(r, c, L[r][c])`: an `OA(d², 3, d, 2)`.
    pub fn from_latin(l: &LatinSquare) -> Self {
        let d = l.d();
        let rows = (0..d * d).map(|k| vec![k / d, k % d, l.get(k / d, k % d)]).collect();
        Self { levels: d, strength: 2, rows }
    }

    /// Rows `(r, c, v, s)`: an `OA(d², 4, d, 2)`.
    pub fn from_pair(p: &OrthogonalLatinPair) -> Self {
        let d = p.d();
        let rows = (0..d * d)
            .map(|k| {
                let (v, s) = p.card(k / d, k % d);
                vec![k / d, k % d, v, s]
            })
            .collect();
        Self { levels: d, strength: 2, rows }
    }
}

/// Counts every `strength`-tuple in every choice of `strength` columns; each
/// must appear `runs / levels^strength` times.
pub fn oa_verify(a: &OrthogonalArray) -> Result<ArrayReport> {
    let (n, d, k) = (a.factors(), a.levels, a.strength);
    if d == 0 || a.rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= d)) {
        return Err(Error::InvalidDesign("array rows must have equal length and symbols below the level count".into()));
    }
    if k > n {
        return Err(Error::InvalidDesign(format!("strength {k} exceeds the {n} factors")));
    }
    let cells = d.pow(k as u32);
    let runs = a.runs();
    let mut violations = Vec::new();
    let projections = subsets(n, k);
    if runs % cells != 0 || runs == 0 {
        violations.push(ArrayViolation {
            columns: Vec::new(),
            detail: format!("{runs} runs is not a positive multiple of {d}^{k}"),
            residual: f64::NAN,
        });
    }
    let index = runs / cells;
    for cols in &projections {
        let mut count = vec![0usize; cells];
        for row in &a.rows {
            count[cols.iter().fold(0, |acc, &c| acc * d + row[c])] += 1;
        }
        if let Some(bad) = count.iter().position(|&x| x != index) {
            violations.push(ArrayViolation {
                columns: cols.clone(),
                detail: format!("tuple #{bad} appears {} times, expected {index}", count[bad]),
                residual: count.iter().map(|&x| x.abs_diff(index)).max().unwrap_or(0) as f64,
            });
        }
    }
    Ok(ArrayReport { projections_checked: projections.len(), violations })
}

impl QuantumOrthogonalArray {
    pub fn parties(&self) -> usize {
        self.classical + self.quantum
    }

    /// Rows `|i⟩|j⟩|ψ_ij⟩`: two classical and two quantum columns, strength 2.
    pub fn from_quantum_square(q: &QuantumSquare) -> Result<Self> {
        let d = q.d();
        if q.local_dim() != d * d {
            return Err(Error::dim("only bipartite quantum squares give a four-column array"));
        }
        let n = d * d;
        let rows = (0..n)
            .map(|mu| {
                let mut row = vec![Complex64::new(0.0, 0.0); n * n];
                row[mu * n..(mu + 1) * n].copy_from_slice(q.cell(mu / d, mu % d));
                row
            })
            .collect();
        Ok(Self { levels: d, strength: 2, classical: 2, quantum: 2, rows })
    }
}

/// `Σ_j Tr_I |φ_j⟩⟨φ_j|` over rows, keeping the parties in `keep`.
fn summed_reduction(rows: &[Vec<Complex64>], d: usize, parties: usize, keep: &[usize]) -> Vec<Complex64> {
    let traced: Vec<usize> = (0..parties).filter(|p| !keep.contains(p)).collect();
    let kd = d.pow(keep.len() as u32);
    let td = d.pow(traced.len() as u32);
    let flat = |kept: usize, tr: usize| {
        let mut digits = vec![0usize; parties];
        let (mut x, mut y) = (kept, tr);
        for &p in keep.iter().rev() {
            digits[p] = x % d;
            x /= d;
        }
        for &p in traced.iter().rev() {
            digits[p] = y % d;
            y /= d;
        }
        digits.iter().fold(0, |acc, &g| acc * d + g)
    };
    let mut rho = vec![Complex64::new(0.0, 0.0); kd * kd];
    for row in rows {
        for a in 0..kd {
            for b in 0..kd {
                rho[a * kd + b] += (0..td).map(|t| row[flat(a, t)] * row[flat(b, t)].conj()).sum::<Complex64>();
            }
        }
    }
    rho
}

/// For every set of `strength` parties, checks that the row-summed reduced
/// operator is proportional to the identity.
pub fn qoa_verify(a: &QuantumOrthogonalArray, tol: f64) -> Result<ArrayReport> {
    let (d, n, k) = (a.levels, a.parties(), a.strength);
    let dim = d.checked_pow(n as u32).ok_or_else(|| Error::dim("array too large"))?;
    if d == 0 || k > n || a.rows.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidDesign(format!("each row must hold {dim} amplitudes and strength must not exceed {n}")));
    }
    let kd = d.pow(k as u32);
    let projections = subsets(n, k);
    let mut violations = Vec::new();
    if a.rows.is_empty() {
        violations.push(ArrayViolation { columns: Vec::new(), detail: "no rows".into(), residual: f64::NAN });
    }
    for keep in &projections {
        let rho = summed_reduction(&a.rows, d, n, keep);
        let trace: f64 = (0..kd).map(|x| rho[x * kd + x].re).sum();
        let c = trace / kd as f64;
        let residual = rho
            .iter()
            .enumerate()
            .map(|(idx, z)| (z - if idx / kd == idx % kd { c } else { 0.0 }).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual > tol {
            violations.push(ArrayViolation {
                columns: keep.clone(),
                detail: format!("reduced operator deviates from {c}·I"),
                residual,
            });
        }
    }
    Ok(ArrayReport { projections_checked: projections.len(), violations })
}
