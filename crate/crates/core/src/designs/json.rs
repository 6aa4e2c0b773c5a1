use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{LatinSquare, OrthogonalArray, OrthogonalLatinPair, QuantumOrthogonalArray, QuantumSquare};
use crate::error::{Error, Result};

/// On-disk design: `{"kind": "ls" | "ols" | "qls" | "qols" | "oa" | "qoa", "d": d, ...}`.
/// Complex amplitudes are written as `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DesignFile {
    Ls { d: usize, cells: Vec<Vec<usize>> },
    Ols { d: usize, ranks: Vec<Vec<usize>>, suits: Vec<Vec<usize>> },
    Qls { d: usize, cells: Vec<Vec<[f64; 2]>> },
    Qols { d: usize, cells: Vec<Vec<[f64; 2]>> },
    Oa { d: usize, strength: usize, rows: Vec<Vec<usize>> },
    Qoa { d: usize, strength: usize, classical: usize, quantum: usize, rows: Vec<Vec<[f64; 2]>> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Design {
    Ls(LatinSquare),
    /// A pair of Latin squares, orthogonal or not.
    Ols(OrthogonalLatinPair),
    Qls(QuantumSquare),
    Qols(QuantumSquare),
    Oa(OrthogonalArray),
    Qoa(QuantumOrthogonalArray),
}

fn to_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn from_pairs(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn check_d(kind: &str, stated: usize, actual: usize) -> Result<()> {
    if stated == actual {
        Ok(())
    } else {
        Err(Error::InvalidDesign(format!("{kind} declares d = {stated} but has order {actual}")))
    }
}

impl Design {
    pub fn kind(&self) -> &'static str {
        match self {
            Design::Ls(_) => "ls",
            Design::Ols(_) => "ols",
            Design::Qls(_) => "qls",
            Design::Qols(_) => "qols",
            Design::Oa(_) => "oa",
            Design::Qoa(_) => "qoa",
        }
    }

    pub fn to_file(&self) -> DesignFile {
        match self {
            Design::Ls(l) => DesignFile::Ls { d: l.d(), cells: l.cells().to_vec() },
            Design::Ols(p) => {
                DesignFile::Ols { d: p.d(), ranks: p.ranks.cells().to_vec(), suits: p.suits.cells().to_vec() }
            }
            Design::Qls(q) => DesignFile::Qls { d: q.d(), cells: q.cells().iter().map(|c| to_pairs(c)).collect() },
            Design::Qols(q) => DesignFile::Qols { d: q.d(), cells: q.cells().iter().map(|c| to_pairs(c)).collect() },
            Design::Oa(a) => DesignFile::Oa { d: a.levels, strength: a.strength, rows: a.rows.clone() },
            Design::Qoa(a) => DesignFile::Qoa {
                d: a.levels,
                strength: a.strength,
                classical: a.classical,
                quantum: a.quantum,
                rows: a.rows.iter().map(|r| to_pairs(r)).collect(),
            },
        }
    }

    pub fn from_file(f: DesignFile) -> Result<Self> {
        Ok(match f {
            DesignFile::Ls { d, cells } => {
                let l = LatinSquare::new(cells)?;
                check_d("ls", d, l.d())?;
                Design::Ls(l)
            }
            DesignFile::Ols { d, ranks, suits } => {
                let p = OrthogonalLatinPair::from_cells(ranks, suits)?;
                check_d("ols", d, p.d())?;
                Design::Ols(p)
            }
            DesignFile::Qls { d, cells } => {
                Design::Qls(QuantumSquare::new(d, d, cells.iter().map(|c| from_pairs(c)).collect())?)
            }
            DesignFile::Qols { d, cells } => {
                Design::Qols(QuantumSquare::new(d, d * d, cells.iter().map(|c| from_pairs(c)).collect())?)
            }
            DesignFile::Oa { d, strength, rows } => Design::Oa(OrthogonalArray { levels: d, strength, rows }),
            DesignFile::Qoa { d, strength, classical, quantum, rows } => Design::Qoa(QuantumOrthogonalArray {
                levels: d,
                strength,
                classical,
                quantum,
                rows: rows.iter().map(|r| from_pairs(r)).collect(),
            }),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{classical_embed, cyclic_latin, mols_pair};

    #[test]
    fn round_trips() {
        let p = mols_pair(4).unwrap();
        let designs = vec![
            Design::Ls(cyclic_latin(5).unwrap()),
            Design::Ols(p.clone()),
            Design::Qols(classical_embed(&mols_pair(3).unwrap()).unwrap()),
            Design::Qls(QuantumSquare::from_latin(&cyclic_latin(3).unwrap())),
            Design::Oa(OrthogonalArray::from_pair(&p)),
        ];
        for d in designs {
            let text = d.to_json().unwrap();
            assert!(text.contains(&format!("\"kind\": \"{}\"", d.kind())));
            assert_eq!(Design::from_json(&text).unwrap(), d);
        }
    }

    #[test]
    fn declared_order_must_match() {
        let text = r#"{"kind": "ls", "d": 3, "cells": [[0,1],[1,0]]}"#;
        assert!(matches!(Design::from_json(text), Err(Error::InvalidDesign(_))));
        assert!(matches!(Design::from_json(r#"{"kind": "xx", "d": 1}"#), Err(Error::Json(_))));
    }
}
