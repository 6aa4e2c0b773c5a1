use std::path::PathBuf;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::SearchConfig;
use crate::designs::{check_conditions, cards_to_permutation};
use crate::error::{Error, Result};
use crate::linalg::{kernel, ComplexMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeedKind {
    /// Haar-distributed unitary of order `d²`.
    RandomUnitary,
    /// `P + εY` with `P` the base permutation.
    PerturbedPermutation,
    /// A matrix read from a JSON file in the `ComplexMatrix` format.
    UserMatrix { path: PathBuf },
}

/// The generator behind every random draw of a search.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex Gaussian with independent real and imaginary parts of variance ½.
pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `n × n` matrix of [`complex_gaussian`] entries drawn in row-major order.
pub fn ginibre<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    (0..n * n).map(|_| complex_gaussian(rng)).collect()
}

/// Haar unitary of order `n`: the unitary polar factor of a Ginibre sample.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    let g = ComplexMatrix::square(n, ginibre(n, rng))?;
    Ok(ComplexMatrix::from_faer(&kernel::polar_unitary(&g.to_faer())?, g.block_dim()))
}

pub fn load_matrix(path: &std::path::Path) -> Result<ComplexMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

/// Starting point `X₀` of a search.
pub fn seed_matrix(config: &SearchConfig) -> Result<ComplexMatrix> {
    config.validate()?;
    let n = config.d * config.d;
    let mut rng = rng_from_seed(config.rng_seed);
    let x = match &config.seed_kind {
        SeedKind::RandomUnitary => haar_unitary(n, &mut rng)?,
        SeedKind::PerturbedPermutation => {
            let p = match &config.base {
                Some(p) => p.clone(),
                None => default_base_permutation(config.d)?.permutation,
            };
            if config.epsilon == 0.0 {
                p
            } else {
                let eps = Complex64::new(config.epsilon, 0.0);
                let y = ComplexMatrix::square(n, ginibre(n, &mut rng))?;
                p.add(&y.scale(eps))
            }
        }
        SeedKind::UserMatrix { path } => load_matrix(path)?,
    };
    if x.order() != n {
        return Err(Error::dim(format!("seed has order {}, expected {n}", x.order())));
    }
    x.with_block_dim(config.d)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasePermutation {
    pub permutation: ComplexMatrix,
    /// Distinct cards in the Latin pair the permutation was built from.
    pub distinct_pairs: usize,
}

const BASE_SEED: u64 = 0x5eed_0636;
const BASE_RESTARTS: usize = 50;
const BASE_STEPS: usize = 4000;
const BASE_SCRAMBLE: usize = 30;
const BASE_UPHILL: f64 = 0.02;

type Grid = Vec<Vec<usize>>;

/// Exchanges the symbols of rows `r1`, `r2` along the cycle through column `c`,
/// which keeps the square Latin.
fn row_cycle_switch(l: &mut Grid, r1: usize, r2: usize, c: usize) {
    let a = l[r1][c];
    let mut cols = vec![c];
    let mut cur = l[r2][c];
    while cur != a {
        let cc = l[r1].iter().position(|&x| x == cur).expect("rows of a Latin square are permutations");
        cols.push(cc);
        cur = l[r2][cc];
    }
    for cc in cols {
        let t = l[r1][cc];
        l[r1][cc] = l[r2][cc];
        l[r2][cc] = t;
    }
}

fn transposed(l: &Grid) -> Grid {
    (0..l.len()).map(|c| l.iter().map(|row| row[c]).collect()).collect()
}

fn random_switch<R: Rng>(l: &Grid, rng: &mut R) -> Grid {
    let d = l.len();
    let rows: Vec<usize> = (0..d).collect();
    let pick: Vec<usize> = rows.choose_multiple(rng, 2).copied().collect();
    let c = rng.gen_range(0..d);
    if rng.gen_bool(0.5) {
        let mut m = l.clone();
        row_cycle_switch(&mut m, pick[0], pick[1], c);
        m
    } else {
        let mut t = transposed(l);
        row_cycle_switch(&mut t, pick[0], pick[1], c);
        transposed(&t)
    }
}

fn distinct(a: &Grid, b: &Grid) -> usize {
    let d = a.len();
    let mut seen = vec![false; d * d];
    for r in 0..d {
        for c in 0..d {
            seen[a[r][c] * d + b[r][c]] = true;
        }
    }
    seen.iter().filter(|&&x| x).count()
}

/// Pair of Latin squares of order `d` with as many distinct cards as a local
/// search over cycle switches finds. Deterministic.
pub fn near_orthogonal_pair(d: usize) -> Result<(Grid, Grid, usize)> {
    if d < 2 {
        return Err(Error::dim(format!("order {d} is too small for a Latin pair")));
    }
    let cyclic: Grid = (0..d).map(|i| (0..d).map(|j| (i + j) % d).collect()).collect();
    let mut rng = rng_from_seed(BASE_SEED);
    let mut best: Option<(usize, Grid, Grid)> = None;
    for _ in 0..BASE_RESTARTS {
        let (mut a, mut b) = (cyclic.clone(), cyclic.clone());
        for _ in 0..BASE_SCRAMBLE {
            a = random_switch(&a, &mut rng);
            b = random_switch(&b, &mut rng);
        }
        let mut score = distinct(&a, &b);
        for _ in 0..BASE_STEPS {
            let (a2, b2) = if rng.gen_bool(0.5) {
                (random_switch(&a, &mut rng), b.clone())
            } else {
                (a.clone(), random_switch(&b, &mut rng))
            };
            let s2 = distinct(&a2, &b2);
            if s2 >= score || rng.gen_bool(BASE_UPHILL) {
                a = a2;
                b = b2;
                score = s2;
            }
            if best.as_ref().map_or(true, |x| score > x.0) {
                best = Some((score, a.clone(), b.clone()));
            }
            if score == d * d {
                break;
            }
        }
        if best.as_ref().is_some_and(|x| x.0 == d * d || (d == 6 && x.0 >= 34)) {
            break;
        }
    }
    let (score, a, b) = best.expect("at least one restart runs");
    check_conditions(&a, &b)?;
    Ok((a, b, score))
}

/// Permutation of order `d²` from [`near_orthogonal_pair`]. Cells holding an
/// already placed card receive the missing cards in increasing order.
pub fn default_base_permutation(d: usize) -> Result<BasePermutation> {
    let (a, b, distinct_pairs) = near_orthogonal_pair(d)?;
    let mut used = vec![false; d * d];
    let mut cards = vec![usize::MAX; d * d];
    for r in 0..d {
        for c in 0..d {
            let card = a[r][c] * d + b[r][c];
            if !used[card] {
                used[card] = true;
                cards[r * d + c] = card;
            }
        }
    }
    let mut missing = (0..d * d).filter(|&k| !used[k]);
    for slot in cards.iter_mut().filter(|x| **x == usize::MAX) {
        *slot = missing.next().expect("as many missing cards as repeated cells");
    }
    Ok(BasePermutation { permutation: cards_to_permutation(d, &cards)?, distinct_pairs })
}
