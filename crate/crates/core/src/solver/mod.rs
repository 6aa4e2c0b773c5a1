//! Alternating polar iteration for 2-unitary matrices.
//!
//! One step takes `X = H·V`, then `V^R = H′·W`, and returns `X₁ = W^Γ`. The
//! convergence measure is the two-unitarity defect of the unitary factor `V`.

mod brute;
mod profile;
mod seed;

pub use brute::brute_force_permutations;
pub use profile::{amplitude_profile, GoldenConstants};
pub use seed::{
    complex_gaussian, default_base_permutation, ginibre, haar_unitary, load_matrix, near_orthogonal_pair,
    rng_from_seed, seed_matrix, BasePermutation, SeedKind,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel, partial_transpose, polar_decompose, reshuffle, ComplexMatrix, PolarFactors, Side};

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_SEARCH_TOL: f64 = 1e-10;
/// Width of the bins of [`SearchSummary::iteration_histogram`].
pub const HISTOGRAM_BIN: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub d: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub epsilon: f64,
    pub seed_kind: SeedKind,
    pub rng_seed: u64,
    /// Permutation perturbed by [`SeedKind::PerturbedPermutation`];
    /// [`default_base_permutation`] when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<ComplexMatrix>,
}

impl SearchConfig {
    /// Defaults: `max_iter` 2000 for `d ≤ 3` and 5000 above, `tol` 1e-10,
    /// `ε` 0.1, perturbed-permutation seeds for `d = 6` and Haar seeds otherwise.
    pub fn new(d: usize) -> Self {
        Self {
            d,
            max_iter: if d <= 3 { 2000 } else { 5000 },
            tol: DEFAULT_SEARCH_TOL,
            epsilon: DEFAULT_EPSILON,
            seed_kind: if d == 6 { SeedKind::PerturbedPermutation } else { SeedKind::RandomUnitary },
            rng_seed: 0,
            base: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::Config(format!("local dimension {} must be at least 2", self.d)));
        }
        if self.max_iter < 1 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!("epsilon must be nonnegative, got {}", self.epsilon)));
        }
        if let Some(p) = &self.base {
            if p.order() != self.d * self.d || p.as_permutation().is_none() {
                return Err(Error::Config(format!("base must be a permutation matrix of order {}", self.d * self.d)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedDescriptor {
    pub kind: SeedKind,
    pub rng_seed: u64,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchRun {
    pub seed: SeedDescriptor,
    /// Entry `n` is the defect of `V_n`, the unitary factor of `X_n`.
    pub defect_trace: Vec<f64>,
    /// Number of steps taken; the trace has one more entry.
    pub iterations_used: usize,
    pub converged: bool,
    /// The last unitary factor `V_n`.
    pub terminal: ComplexMatrix,
}

impl SearchRun {
    pub fn final_defect(&self) -> f64 {
        *self.defect_trace.last().expect("a run records at least one defect")
    }

    pub fn min_defect(&self) -> f64 {
        self.defect_trace.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Both polar decompositions of one step and its output.
#[derive(Clone, Debug, PartialEq)]
pub struct StepParts {
    /// `X = H·V`.
    pub first: PolarFactors,
    /// `V^R = H′·W`.
    pub second: PolarFactors,
    /// `W^Γ`.
    pub output: ComplexMatrix,
}

pub fn sinkhorn_step_parts(x: &ComplexMatrix) -> Result<StepParts> {
    x.require_bipartite()?;
    let first = polar_decompose(x)?;
    let second = polar_decompose(&reshuffle(&first.unitary_part)?)?;
    let output = partial_transpose(&second.unitary_part, Side::Second)?;
    Ok(StepParts { first, second, output })
}

pub fn sinkhorn_step(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(sinkhorn_step_parts(x)?.output)
}

/// Iterates [`sinkhorn_step`] from the seed until the defect of the unitary
/// iterate is at most `tol` or `max_iter` steps have been taken.
pub fn search(config: &SearchConfig) -> Result<SearchRun> {
    let x0 = seed_matrix(config)?;
    Ok(iterate(config, &x0))
}

/// [`search`] from an explicit starting matrix.
pub fn search_from(config: &SearchConfig, x0: &ComplexMatrix) -> Result<SearchRun> {
    config.validate()?;
    if x0.order() != config.d * config.d {
        return Err(Error::dim(format!("seed has order {}, expected {}", x0.order(), config.d * config.d)));
    }
    Ok(iterate(config, x0))
}

fn iterate(config: &SearchConfig, x0: &ComplexMatrix) -> SearchRun {
    let d = config.d;
    let seed = SeedDescriptor { kind: config.seed_kind.clone(), rng_seed: config.rng_seed, epsilon: config.epsilon };
    let mut x = x0.to_faer();
    let mut trace = Vec::new();
    let mut last_v = None;
    for n in 0..=config.max_iter {
        let v = match kernel::polar_unitary(&x) {
            Ok(v) => v,
            Err(_) => break,
        };
        let defect = kernel::two_unitarity_defect(&v, d);
        trace.push(defect);
        let done = defect <= config.tol || n == config.max_iter;
        if !done {
            match kernel::polar_unitary(&kernel::reshuffle(&v, d)) {
                Ok(w) => x = kernel::partial_transpose_second(&w, d),
                Err(_) => {
                    last_v = Some(v);
                    break;
                }
            }
        }
        last_v = Some(v);
        if done {
            break;
        }
    }
    let terminal = match last_v {
        Some(v) => ComplexMatrix::from_faer(&v, d),
        None => {
            trace.push(f64::INFINITY);
            ComplexMatrix::identity(d * d).with_block_dim(d).expect("d² is bipartite")
        }
    };
    let converged = trace.last().is_some_and(|&e| e <= config.tol);
    SearchRun { seed, iterations_used: trace.len() - 1, defect_trace: trace, converged, terminal }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub start: usize,
    pub end: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub runs: usize,
    pub converged: usize,
    pub convergence_rate: f64,
    /// Smallest final defect over all runs.
    pub best_defect: f64,
    /// Smallest defect seen anywhere in any trace.
    pub min_observed_defect: f64,
    pub best_run: usize,
    /// Iteration counts of converged runs in bins `[start, end)`; empty bins omitted.
    pub iteration_histogram: Vec<HistogramBin>,
    pub mean_converged_iterations: Option<f64>,
}

impl SearchSummary {
    pub fn from_runs(runs: &[SearchRun]) -> Self {
        let converged: Vec<usize> = runs.iter().filter(|r| r.converged).map(|r| r.iterations_used).collect();
        let (best_run, best_defect) = runs
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.final_defect()))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        let mut bins: Vec<HistogramBin> = Vec::new();
        let mut sorted = converged.clone();
        sorted.sort_unstable();
        for it in sorted {
            let start = it / HISTOGRAM_BIN * HISTOGRAM_BIN;
            match bins.last_mut() {
                Some(b) if b.start == start => b.count += 1,
                _ => bins.push(HistogramBin { start, end: start + HISTOGRAM_BIN, count: 1 }),
            }
        }
        Self {
            runs: runs.len(),
            converged: converged.len(),
            convergence_rate: if runs.is_empty() { 0.0 } else { converged.len() as f64 / runs.len() as f64 },
            best_defect,
            min_observed_defect: runs.iter().map(SearchRun::min_defect).fold(f64::INFINITY, f64::min),
            best_run,
            iteration_histogram: bins,
            mean_converged_iterations: if converged.is_empty() {
                None
            } else {
                Some(converged.iter().sum::<usize>() as f64 / converged.len() as f64)
            },
        }
    }
}

/// `n_seeds` runs with seeds `rng_seed + i`, in parallel, returned in seed order.
pub fn multi_seed_search(config: &SearchConfig, n_seeds: usize) -> Result<(Vec<SearchRun>, SearchSummary)> {
    if n_seeds < 1 {
        return Err(Error::Config("at least one seed is required".into()));
    }
    config.validate()?;
    let mut shared = config.clone();
    if shared.seed_kind == SeedKind::PerturbedPermutation && shared.base.is_none() {
        shared.base = Some(default_base_permutation(shared.d)?.permutation);
    }
    let runs = (0..n_seeds as u64)
        .into_par_iter()
        .map(|i| {
            let mut c = shared.clone();
            c.rng_seed = shared.rng_seed.wrapping_add(i);
            search(&c)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = SearchSummary::from_runs(&runs);
    Ok((runs, summary))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub rng_seed: u64,
    pub converged: bool,
    pub iterations: usize,
    pub final_defect: f64,
    pub terminal: ComplexMatrix,
}

/// On-disk result of a multi-seed search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub summary: SearchSummary,
    pub runs: Vec<RunRecord>,
}

impl SearchReport {
    pub fn new(config: &SearchConfig, runs: &[SearchRun], summary: SearchSummary) -> Self {
        let runs = runs
            .iter()
            .map(|r| RunRecord {
                rng_seed: r.seed.rng_seed,
                converged: r.converged,
                iterations: r.iterations_used,
                final_defect: r.final_defect(),
                terminal: r.terminal.clone(),
            })
            .collect();
        Self { config: config.clone(), summary, runs }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Long-format CSV `rng_seed,iteration,defect`.
pub fn traces_csv(runs: &[SearchRun]) -> String {
    let mut out = String::from("rng_seed,iteration,defect\n");
    for r in runs {
        for (n, e) in r.defect_trace.iter().enumerate() {
            out.push_str(&format!("{},{},{:.15e}\n", r.seed.rng_seed, n, e));
        }
    }
    out
}
