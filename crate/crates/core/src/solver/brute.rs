use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Whether `images` (row `k` has its 1 in column `images[k]`) stays a
/// permutation under reshuffling and under partial transposition.
fn is_two_unitary(images: &[usize], d: usize, scratch: &mut [bool]) -> bool {
    let n = d * d;
    for reorder in 0..2 {
        scratch.iter_mut().for_each(|x| *x = false);
        for (row, &col) in images.iter().enumerate() {
            let (a, i, b, j) = (row / d, row % d, col / d, col % d);
            let (r, c) = if reorder == 0 { (a * d + b, i * d + j) } else { (a * d + j, b * d + i) };
            if scratch[r] || scratch[n + c] {
                return false;
            }
            scratch[r] = true;
            scratch[n + c] = true;
        }
    }
    true
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element follows position i");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Every permutation matrix of order `d²` whose reshuffle and partial
/// transpose are again permutations, in lexicographic order of the images.
pub fn brute_force_permutations(d: usize) -> Result<Vec<ComplexMatrix>> {
    let n = d * d;
    if d > 3 {
        let count: f64 = (1..=n).map(|k| k as f64).product();
        return Err(Error::Capability(format!(
            "exhaustive search at d = {d} would visit ({n})! ≈ {count:.3e} permutations; only d ≤ 3 is supported"
        )));
    }
    if d == 0 {
        return Err(Error::dim("local dimension must be positive"));
    }
    let mut images: Vec<usize> = (0..n).collect();
    let mut scratch = vec![false; 2 * n];
    let mut found = Vec::new();
    loop {
        if is_two_unitary(&images, d, &mut scratch) {
            found.push(ComplexMatrix::permutation(&images)?.with_block_dim(d)?);
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    Ok(found)
}
