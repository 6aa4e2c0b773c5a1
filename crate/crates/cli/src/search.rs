use std::path::PathBuf;

use clap::{Args, ValueEnum};
use qeuler::linalg::ComplexMatrix;
use qeuler::solver::{brute_force_permutations, multi_seed_search, traces_csv, SearchConfig, SearchReport, SeedKind};

use crate::outcome::{num, parse, read, write, CmdResult, CommandOutcome, Failure};
use crate::render::{self, Render};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeedChoice {
    RandomUnitary,
    PerturbedPermutation,
    UserMatrix,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 1)]
    pub seeds: usize,
    /// Default 2000 for dim ≤ 3, 5000 above.
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long, default_value_t = qeuler::solver::DEFAULT_SEARCH_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = qeuler::solver::DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Default perturbed-permutation for dim 6, random-unitary otherwise.
    #[arg(long, value_enum)]
    pub seed_kind: Option<SeedChoice>,
    /// Matrix file for `--seed-kind user-matrix`.
    #[arg(long)]
    pub seed_matrix: Option<PathBuf>,
    /// Permutation matrix file replacing the default base permutation.
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[arg(long, env = "QEULER_RNG_SEED", default_value_t = 0)]
    pub rng_seed: u64,
    /// Search report JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV of all defect traces.
    #[arg(long)]
    pub traces: Option<PathBuf>,
    /// Worker threads; all cores by default.
    #[arg(long)]
    pub jobs: Option<usize>,
}

fn config(a: &SearchArgs) -> Result<SearchConfig, Failure> {
    let mut c = SearchConfig::new(a.dim);
    if let Some(m) = a.max_iter {
        c.max_iter = m;
    }
    c.tol = a.tol;
    c.epsilon = a.epsilon;
    c.rng_seed = a.rng_seed;
    match (a.seed_kind, &a.seed_matrix) {
        (Some(SeedChoice::UserMatrix), Some(path)) | (None, Some(path)) => {
            c.seed_kind = SeedKind::UserMatrix { path: path.clone() }
        }
        (Some(SeedChoice::UserMatrix), None) => return Err(Failure::usage("user-matrix seeds need --seed-matrix")),
        (Some(SeedChoice::RandomUnitary), _) => c.seed_kind = SeedKind::RandomUnitary,
        (Some(SeedChoice::PerturbedPermutation), _) => c.seed_kind = SeedKind::PerturbedPermutation,
        (None, None) => {}
    }
    if let Some(path) = &a.base {
        let m: ComplexMatrix = parse(path, &read(path)?)?;
        c.base = Some(m.with_block_dim(a.dim)?);
    }
    c.validate()?;
    Ok(c)
}

pub fn search(a: SearchArgs) -> CmdResult {
    let c = config(&a)?;
    if a.seeds < 1 {
        return Err(Failure::usage("--seeds must be at least 1"));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| Failure::usage(e.to_string()))?;
    let (runs, summary) = pool.install(|| multi_seed_search(&c, a.seeds))?;
    let mut lines = vec![
        format!("dim {} seeds {} max_iter {} tol {} epsilon {}", c.d, a.seeds, c.max_iter, num(c.tol), num(c.epsilon)),
        format!("seed kind {:?}, rng seeds {}..{}", c.seed_kind, c.rng_seed, c.rng_seed.wrapping_add(a.seeds as u64)),
        format!("converged {} of {} (rate {})", summary.converged, summary.runs, num(summary.convergence_rate)),
        format!("best final defect {} (run {})", num(summary.best_defect), summary.best_run),
        format!("smallest defect seen {}", num(summary.min_observed_defect)),
    ];
    if let Some(m) = summary.mean_converged_iterations {
        lines.push(format!("mean iterations to converge {}", num(m)));
    }
    for b in &summary.iteration_histogram {
        lines.push(format!("  iterations [{}, {}): {}", b.start, b.end, b.count));
    }
    let found = summary.converged > 0;
    let report = SearchReport::new(&c, &runs, summary);
    if let Some(path) = &a.out {
        write(path, &report.to_json()?)?;
        lines.push(format!("report written to {}", path.display()));
    }
    if let Some(path) = &a.traces {
        write(path, &traces_csv(&runs))?;
        lines.push(format!("traces written to {}", path.display()));
    }
    Ok(CommandOutcome::new(found, lines.join("\n")).with_artifact(a.out.as_deref()))
}

pub fn bruteforce(dim: usize, show: bool, style: Render) -> CmdResult {
    let found = brute_force_permutations(dim)?;
    let total: usize = (1..=dim * dim).product();
    let mut lines = vec![format!("{} found among {total} permutations of order {}", found.len(), dim * dim)];
    if show {
        for m in &found {
            lines.push(String::new());
            lines.push(render::permutation(m, style));
        }
    }
    Ok(CommandOutcome::new(true, lines.join("\n")))
}
