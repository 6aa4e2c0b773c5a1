use std::fmt;

use serde::{Deserialize, Serialize};

use super::latin::{check_grid, latin_violations, LatinSquare, Line};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{partial_transpose, reshuffle, ComplexMatrix, Side};

/// Two Latin squares of the same order: ranks `v` and suits `s`.
///
/// Construction only requires both squares to be Latin; orthogonality is
/// what [`verify_orthogonal_pair`] checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalLatinPair {
    pub ranks: LatinSquare,
    pub suits: LatinSquare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// All `d²` (rank, suit) pairs distinct.
    C1,
    /// No rank and no suit repeated in a row.
    C2,
    /// No rank and no suit repeated in a column.
    C3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    /// Cells `(r, c)` taking part in the violation.
    pub cells: Vec<(usize, usize)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OlsReport {
    pub d: usize,
    pub distinct_pairs: usize,
    pub violations: Vec<Violation>,
}

impl OlsReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl OrthogonalLatinPair {
    pub fn new(ranks: LatinSquare, suits: LatinSquare) -> Result<Self> {
        if ranks.d() != suits.d() {
            return Err(Error::InvalidDesign(format!(
                "rank square has order {}, suit square {}",
                ranks.d(),
                suits.d()
            )));
        }
        Ok(Self { ranks, suits })
    }

    pub fn from_cells(ranks: Vec<Vec<usize>>, suits: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(LatinSquare::new(ranks)?, LatinSquare::new(suits)?)
    }

    pub fn d(&self) -> usize {
        self.ranks.d()
    }

    /// `(v, s)` in cell `(r, c)`.
    pub fn card(&self, r: usize, c: usize) -> (usize, usize) {
        (self.ranks.get(r, c), self.suits.get(r, c))
    }

    pub fn distinct_pairs(&self) -> usize {
        let d = self.d();
        let mut seen = vec![false; d * d];
        for r in 0..d {
            for c in 0..d {
                let (v, s) = self.card(r, c);
                seen[v * d + s] = true;
            }
        }
        seen.iter().filter(|&&x| x).count()
    }

    fn require_valid(&self) -> Result<()> {
        let rep = verify_orthogonal_pair(self);
        match rep.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidDesign(format!(
                "not an orthogonal pair ({} violations, first {:?}: {})",
                rep.violations.len(),
                v.condition,
                v.detail
            ))),
        }
    }
}

/// Renders one row per line, each cell as two digits `v s` counted from 1.
impl fmt::Display for OrthogonalLatinPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d();
        let sep = if d > 9 { "," } else { "" };
        for r in 0..d {
            let cells: Vec<String> = (0..d)
                .map(|c| {
                    let (v, s) = self.card(r, c);
                    format!("{}{sep}{}", v + 1, s + 1)
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Checks the classical Euler conditions C1–C3 on a pair of `d × d` grids,
/// which need not be Latin.
pub fn check_conditions(ranks: &[Vec<usize>], suits: &[Vec<usize>]) -> Result<OlsReport> {
    let d = check_grid(ranks)?;
    if check_grid(suits)? != d {
        return Err(Error::InvalidDesign("rank and suit grids differ in order".into()));
    }
    let mut violations = Vec::new();
    let mut holders: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d * d];
    for r in 0..d {
        for c in 0..d {
            holders[ranks[r][c] * d + suits[r][c]].push((r, c));
        }
    }
    let distinct_pairs = holders.iter().filter(|h| !h.is_empty()).count();
    for (pair, cells) in holders.iter().enumerate() {
        if cells.len() > 1 {
            violations.push(Violation {
                condition: Condition::C1,
                cells: cells.clone(),
                detail: format!("pair ({}, {}) occurs {} times", pair / d, pair % d, cells.len()),
            });
        }
    }
    for (grid, name) in [(ranks, "rank"), (suits, "suit")] {
        for (line, symbol) in latin_violations(grid) {
            let (condition, cells): (_, Vec<_>) = match line {
                Line::Row(r) => (Condition::C2, (0..d).filter(|&c| grid[r][c] == symbol).map(|c| (r, c)).collect()),
                Line::Column(c) => {
                    (Condition::C3, (0..d).filter(|&r| grid[r][c] == symbol).map(|r| (r, c)).collect())
                }
            };
            violations.push(Violation { condition, cells, detail: format!("{name} {symbol} repeats in {line:?}") });
        }
    }
    Ok(OlsReport { d, distinct_pairs, violations })
}

pub fn verify_orthogonal_pair(p: &OrthogonalLatinPair) -> OlsReport {
    check_conditions(p.ranks.cells(), p.suits.cells()).expect("Latin squares of equal order are well-formed grids")
}

/// The three invertible maps of an orthogonal pair, stored as tables indexed
/// by `x·d + y`: `F1(r, c) = (v, s)`, `F2(s, c) = (v, r)`, `F3(s, r) = (v, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionTables {
    pub d: usize,
    pub f1: Vec<(usize, usize)>,
    pub f2: Vec<(usize, usize)>,
    pub f3: Vec<(usize, usize)>,
}

impl FunctionTables {
    /// Inverse table of `f`, which is a bijection on `[d]²`.
    pub fn invert(&self, f: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let d = self.d;
        let mut inv = vec![(0, 0); d * d];
        for (k, &(x, y)) in f.iter().enumerate() {
            inv[x * d + y] = (k / d, k % d);
        }
        inv
    }
}

fn is_bijection(table: &[Option<(usize, usize)>], d: usize) -> bool {
    let mut hit = vec![false; d * d];
    table.iter().all(|e| match e {
        Some((x, y)) => !std::mem::replace(&mut hit[x * d + y], true),
        None => false,
    })
}

pub fn ols_function_tables(p: &OrthogonalLatinPair) -> Result<FunctionTables> {
    p.require_valid()?;
    let d = p.d();
    let (mut f1, mut f2, mut f3) = (vec![None; d * d], vec![None; d * d], vec![None; d * d]);
    for r in 0..d {
        for c in 0..d {
            let (v, s) = p.card(r, c);
            f1[r * d + c] = Some((v, s));
            f2[s * d + c] = Some((v, r));
            f3[s * d + r] = Some((v, c));
        }
    }
    for (name, t) in [("F1", &f1), ("F2", &f2), ("F3", &f3)] {
        if !is_bijection(t, d) {
            return Err(Error::InvalidDesign(format!("{name} is not a bijection")));
        }
    }
    let unwrap = |t: Vec<Option<(usize, usize)>>| t.into_iter().map(Option::unwrap).collect();
    Ok(FunctionTables { d, f1: unwrap(f1), f2: unwrap(f2), f3: unwrap(f3) })
}

/// Permutation matrix with a 1 at row `v·d + s`, column `r·d + c` for each
/// cell `(r, c)` holding the card `(v, s)`.
pub fn ols_to_permutation(p: &OrthogonalLatinPair) -> Result<ComplexMatrix> {
    p.require_valid()?;
    Ok(pair_to_permutation_unchecked(p))
}

/// The same encoding for any pair whose cards are all distinct; used for
/// near-orthogonal pairs after their repeated cards have been reassigned.
pub(crate) fn cards_to_permutation(d: usize, card_of_cell: &[usize]) -> Result<ComplexMatrix> {
    let mut cell_of_card = vec![usize::MAX; d * d];
    for (cell, &card) in card_of_cell.iter().enumerate() {
        if card >= d * d || cell_of_card[card] != usize::MAX {
            return Err(Error::InvalidDesign(format!("card {card} is placed twice or out of range")));
        }
        cell_of_card[card] = cell;
    }
    ComplexMatrix::permutation(&cell_of_card)?.with_block_dim(d)
}

fn pair_to_permutation_unchecked(p: &OrthogonalLatinPair) -> ComplexMatrix {
    let d = p.d();
    let cards: Vec<usize> = (0..d * d).map(|k| {
        let (v, s) = p.card(k / d, k % d);
        v * d + s
    }).collect();
    cards_to_permutation(d, &cards).expect("orthogonal pairs place every card once")
}

/// Decodes a 2-unitary permutation matrix back into its orthogonal pair.
pub fn permutation_to_ols(m: &ComplexMatrix) -> Result<OrthogonalLatinPair> {
    let d = m.require_bipartite().map_err(|e| Error::NotAnOls(e.to_string()))?;
    let images = m.as_permutation().ok_or_else(|| Error::NotAnOls("not a 0/1 permutation matrix".into()))?;
    for (name, reordered) in [("reshuffle", reshuffle(m)?), ("partial transpose", partial_transpose(m, Side::Second)?)] {
        if reordered.as_permutation().is_none() {
            return Err(Error::NotAnOls(format!("its {name} is not a permutation matrix")));
        }
    }
    let mut ranks = vec![vec![0; d]; d];
    let mut suits = vec![vec![0; d]; d];
    for (card, &cell) in images.iter().enumerate() {
        ranks[cell / d][cell % d] = card / d;
        suits[cell / d][cell % d] = card % d;
    }
    let pair = OrthogonalLatinPair::from_cells(ranks, suits).map_err(|e| Error::NotAnOls(e.to_string()))?;
    pair.require_valid().map_err(|e| Error::NotAnOls(e.to_string()))?;
    Ok(pair)
}

/// The `q − 1` squares `L_a(x, y) = a·x + y` over GF(q), `a ≠ 0`, with field
/// elements numbered as in [`Field::element`].
pub fn mols_construct(q: usize) -> Result<Vec<LatinSquare>> {
    if q == 6 {
        return Err(Error::NoOrthogonalMate { d: 6, reason: "no OLS(6) exists (Euler's 36 officers)".into() });
    }
    let field = Field::new(q as u64)?;
    if q < 3 {
        return Err(Error::NoOrthogonalMate { d: q, reason: "no orthogonal Latin squares below order 3".into() });
    }
    let el: Vec<_> = field.elements().collect();
    (1..q)
        .map(|a| {
            LatinSquare::new(
                (0..q)
                    .map(|x| {
                        (0..q)
                            .map(|y| field.index_of(&field.add(&field.mul(&el[a], &el[x]), &el[y])) as usize)
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect()
}

/// The first two squares of [`mols_construct`] as an orthogonal pair.
pub fn mols_pair(q: usize) -> Result<OrthogonalLatinPair> {
    let mut squares = mols_construct(q)?.into_iter();
    OrthogonalLatinPair::new(squares.next().unwrap(), squares.next().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::two_unitarity_defect;

    /// The order-3 pair shown in the text, in 0-based form.
    fn graeco_latin_3() -> OrthogonalLatinPair {
        OrthogonalLatinPair::from_cells(
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]],
        )
        .unwrap()
    }

    /// The nine-card permutation as printed: card row → position column.
    const P9_IMAGES: [usize; 9] = [0, 7, 5, 8, 3, 1, 4, 2, 6];

    #[test]
    fn graeco_latin_is_valid_and_renders() {
        let p = graeco_latin_3();
        assert!(verify_orthogonal_pair(&p).is_valid());
        assert_eq!(p.to_string(), "11 23 32\n22 31 13\n33 12 21\n");
    }

    #[test]
    fn permutation_matches_printed_p9() {
        let m = ols_to_permutation(&graeco_latin_3()).unwrap();
        assert_eq!(m.as_permutation().unwrap(), P9_IMAGES.to_vec());
        assert_eq!(two_unitarity_defect(&m).unwrap(), 0.0);
        assert_eq!(permutation_to_ols(&m).unwrap(), graeco_latin_3());
    }

    #[test]
    fn identity_is_not_an_ols() {
        assert!(matches!(permutation_to_ols(&ComplexMatrix::identity(9)), Err(Error::NotAnOls(_))));
    }

    #[test]
    fn copies_of_one_square_violate_c1() {
        let l = LatinSquare::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let rep = verify_orthogonal_pair(&OrthogonalLatinPair::new(l.clone(), l).unwrap());
        assert_eq!(rep.distinct_pairs, 3);
        assert!(rep.violations.iter().all(|v| v.condition == Condition::C1));
        assert_eq!(rep.violations.len(), 3);
    }

    #[test]
    fn no_order_two_pair_exists() {
        let squares = [vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]];
        for a in &squares {
            for b in &squares {
                let p = OrthogonalLatinPair::from_cells(a.clone(), b.clone()).unwrap();
                assert!(!verify_orthogonal_pair(&p).is_valid());
            }
        }
        assert!(matches!(mols_construct(2), Err(Error::NoOrthogonalMate { d: 2, .. })));
    }

    #[test]
    fn non_latin_grids_report_c2_and_c3() {
        let ranks = vec![vec![0, 0], vec![1, 1]];
        let suits = vec![vec![0, 1], vec![0, 1]];
        let rep = check_conditions(&ranks, &suits).unwrap();
        assert!(rep.violations.iter().any(|v| v.condition == Condition::C2 && v.cells == vec![(0, 0), (0, 1)]));
        assert!(rep.violations.iter().any(|v| v.condition == Condition::C3));
        assert_eq!(rep.distinct_pairs, 4);
    }

    #[test]
    fn function_tables_of_graeco_latin() {
        let t = ols_function_tables(&graeco_latin_3()).unwrap();
        assert_eq!(t.f1[0], (0, 0));
        let inv = t.invert(&t.f1);
        for k in 0..9 {
            let (x, y) = t.f1[k];
            assert_eq!(inv[x * 3 + y], (k / 3, k % 3));
        }
    }

    #[test]
    fn mols_of_three_relabel_to_the_printed_pair() {
        let sq = mols_construct(3).unwrap();
        assert_eq!(sq.len(), 2);
        let expected = graeco_latin_3();
        assert_eq!(sq[0], expected.ranks);
        // suit symbols differ by s ↦ 2s mod 3
        assert_eq!(sq[1].relabel(&[0, 2, 1]).unwrap(), expected.suits);
    }

    #[test]
    fn six_has_no_field_construction() {
        assert!(matches!(mols_construct(6), Err(Error::NoOrthogonalMate { d: 6, .. })));
        assert!(matches!(mols_construct(10), Err(Error::NotPrimePower { q: 10 })));
    }
}
