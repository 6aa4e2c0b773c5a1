use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Latin square on the symbols `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct LatinSquare {
    cells: Vec<Vec<usize>>,
}

/// A row or column of a square that repeats a symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Line {
    Row(usize),
    Column(usize),
}

/// `(line, symbol)` pairs where `symbol` occurs more than once in `line`.
pub fn latin_violations(cells: &[Vec<usize>]) -> Vec<(Line, usize)> {
    let d = cells.len();
    let mut out = Vec::new();
    for k in 0..d {
        let mut row_count = vec![0; d];
        let mut col_count = vec![0; d];
        for t in 0..d {
            row_count[cells[k][t]] += 1;
            col_count[cells[t][k]] += 1;
        }
        out.extend((0..d).filter(|&s| row_count[s] > 1).map(|s| (Line::Row(k), s)));
        out.extend((0..d).filter(|&s| col_count[s] > 1).map(|s| (Line::Column(k), s)));
    }
    out
}

/// Checks that `cells` is a `d × d` grid with symbols in `0..d`.
pub(crate) fn check_grid(cells: &[Vec<usize>]) -> Result<usize> {
    let d = cells.len();
    if d == 0 {
        return Err(Error::InvalidDesign("empty square".into()));
    }
    for (r, row) in cells.iter().enumerate() {
        if row.len() != d {
            return Err(Error::InvalidDesign(format!("row {r} has {} cells, expected {d}", row.len())));
        }
        if let Some(&s) = row.iter().find(|&&s| s >= d) {
            return Err(Error::InvalidDesign(format!("symbol {s} in row {r} is outside 0..{d}")));
        }
    }
    Ok(d)
}

pub fn verify_latin(cells: &[Vec<usize>]) -> bool {
    check_grid(cells).is_ok() && latin_violations(cells).is_empty()
}

impl LatinSquare {
    pub fn new(cells: Vec<Vec<usize>>) -> Result<Self> {
        check_grid(&cells)?;
        if let Some((line, s)) = latin_violations(&cells).into_iter().next() {
            return Err(Error::InvalidDesign(format!("symbol {s} repeats in {line:?}")));
        }
        Ok(Self { cells })
    }

    pub fn d(&self) -> usize {
        self.cells.len()
    }

    pub fn get(&self, r: usize, c: usize) -> usize {
        self.cells[r][c]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Applies `sigma` to every symbol.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Self> {
        Self::new(self.cells.iter().map(|row| row.iter().map(|&s| sigma[s]).collect()).collect())
    }
}

impl TryFrom<Vec<Vec<usize>>> for LatinSquare {
    type Error = Error;

    fn try_from(cells: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(cells)
    }
}

impl From<LatinSquare> for Vec<Vec<usize>> {
    fn from(l: LatinSquare) -> Self {
        l.cells
    }
}

/// `L[i][j] = (i + j) mod d`.
pub fn cyclic_latin(d: usize) -> Result<LatinSquare> {
    if d == 0 {
        return Err(Error::InvalidDesign("order must be at least 1".into()));
    }
    LatinSquare::new((0..d).map(|i| (0..d).map(|j| (i + j) % d).collect()).collect())
}
