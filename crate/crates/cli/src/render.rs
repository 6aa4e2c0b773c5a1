use qeuler::designs::{LatinSquare, OrthogonalLatinPair};
use qeuler::linalg::ComplexMatrix;

const RANKS: [&str; 6] = ["A", "K", "Q", "J", "10", "9"];
const SUITS: [&str; 6] = ["♠", "♦", "♣", "♥", "★", "●"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Render {
    Digits,
    Cards,
}

fn rank(v: usize, style: Render) -> String {
    match style {
        Render::Cards if v < RANKS.len() => RANKS[v].to_string(),
        _ => (v + 1).to_string(),
    }
}

fn suit(s: usize, style: Render) -> String {
    match style {
        Render::Cards if s < SUITS.len() => SUITS[s].to_string(),
        _ => (s + 1).to_string(),
    }
}

fn grid(cells: Vec<Vec<String>>) -> String {
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn latin(l: &LatinSquare, style: Render) -> String {
    let d = l.d();
    grid((0..d).map(|r| (0..d).map(|c| rank(l.get(r, c), style)).collect()).collect())
}

pub fn pair(p: &OrthogonalLatinPair, style: Render) -> String {
    let d = p.d();
    grid(
        (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        let (v, s) = p.card(r, c);
                        format!("{}{}", rank(v, style), suit(s, style))
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Rows are cards, columns cells; a permutation shows the card in place of each 1.
pub fn permutation(m: &ComplexMatrix, style: Render) -> String {
    let d = m.block_dim();
    let n = m.order();
    grid(
        (0..n)
            .map(|row| {
                (0..n)
                    .map(|col| {
                        let z = m.get(row, col);
                        if z.norm() == 0.0 {
                            "0".to_string()
                        } else if style == Render::Cards && z == num_one() {
                            format!("{}{}", rank(row / d, style), suit(row % d, style))
                        } else if z.im == 0.0 {
                            format!("{}", z.re)
                        } else {
                            format!("{}{:+}i", z.re, z.im)
                        }
                    })
                    .collect()
            })
            .collect(),
    )
}

fn num_one() -> qeuler::linalg::Complex64 {
    qeuler::linalg::Complex64::new(1.0, 0.0)
}
