use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use qeuler::designs::{mols_pair, Design};
use qeuler::linalg::ComplexMatrix;
use qeuler::states::{ame_check, ame_from_ols, k_uniform_check, state_from_two_unitary, PureState};

use crate::outcome::{num, parse, read, write, CmdResult, CommandOutcome, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// `(1/d) Σ |r⟩|c⟩|v⟩|s⟩` from an orthogonal pair.
    Ols,
    /// `(1/d) Σ |i⟩|j⟩|ψ_ij⟩` from the rows of a matrix of order `d²`.
    Matrix,
}

#[derive(Debug, Subcommand)]
pub enum StateCmd {
    /// Write a four-party state as JSON.
    Build {
        #[arg(long)]
        from: Source,
        /// Design or matrix file; without it `--from ols` uses the GF(q) pair of `--order`.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print reduced-state residuals `‖ρ − I/D‖_F`.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// Check k-uniformity; without it every balanced split is checked.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

pub fn run(cmd: StateCmd) -> CmdResult {
    match cmd {
        StateCmd::Build { from, input, order, out } => build(from, input, order, out),
        StateCmd::Check { input, k, tol } => check(input, k, tol),
    }
}

fn build(from: Source, input: Option<PathBuf>, order: Option<usize>, out: Option<PathBuf>) -> CmdResult {
    let psi = match (from, &input, order) {
        (Source::Ols, Some(path), _) => match Design::from_json(&read(path)?).map_err(|e| Failure::usage(e.to_string()))? {
            Design::Ols(p) => ame_from_ols(&p)?,
            other => return Err(Failure::usage(format!("expected an ols design, found {}", other.kind()))),
        },
        (Source::Ols, None, Some(q)) => ame_from_ols(&mols_pair(q)?)?,
        (Source::Matrix, Some(path), _) => {
            let m: ComplexMatrix = parse(path, &read(path)?)?;
            state_from_two_unitary(&m)?
        }
        _ => return Err(Failure::usage("give --in, or --order with --from ols")),
    };
    let text = psi.to_json()?;
    let report = match &out {
        Some(path) => {
            write(path, &text)?;
            format!("state of dims {:?} written to {}", psi.dims(), path.display())
        }
        None => text,
    };
    Ok(CommandOutcome::new(true, report).with_artifact(out.as_deref()))
}

fn check(input: PathBuf, k: Option<usize>, tol: f64) -> CmdResult {
    let psi: PureState = PureState::from_json(&read(&input)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
    let (subsets, passed, title) = match k {
        Some(k) => {
            let rep = k_uniform_check(&psi, k, tol)?;
            let passed = rep.passed();
            (rep.subsets, passed, format!("{k}-uniformity"))
        }
        None => {
            let rep = ame_check(&psi, tol)?;
            let passed = rep.passed();
            let title = if rep.odd_parties { "AME (odd party count)" } else { "AME" };
            (rep.splits, passed, title.to_string())
        }
    };
    let mut lines = vec![format!("{title} check, tol {}", num(tol)), "subset residual".to_string()];
    for (s, r) in &subsets {
        let mark = if *r <= tol { "" } else { "  FAIL" };
        lines.push(format!("{s:?} {}{mark}", num(*r)));
    }
    lines.push(if passed { "PASS".into() } else { "FAIL".into() });
    Ok(CommandOutcome::new(passed, lines.join("\n")))
}
