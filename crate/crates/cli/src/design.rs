use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use qeuler::designs::{
    check_conditions, cyclic_latin, latin_violations, mols_construct, mols_pair, oa_verify, ols_to_permutation, qls_verify, qoa_verify,
    qols_verify, Design, DesignFile, LatinSquare, OrthogonalLatinPair,
};

use crate::outcome::{num, parse, read, write, CmdResult, CommandOutcome, Failure};
use crate::render::{self, Render};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// The cyclic Latin square `(r + c) mod d`.
    Ls,
    /// All `q − 1` squares `a·x + y` over GF(q).
    Mols,
    /// The first two of those squares as an orthogonal pair.
    Ols,
}

#[derive(Debug, Subcommand)]
pub enum DesignCmd {
    /// Write a design as JSON.
    Gen {
        #[arg(long)]
        kind: GenKind,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "digits")]
        render: Render,
    },
    /// Check a design file and list every violation.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Encode an orthogonal pair as a permutation matrix of order `d²`.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "digits")]
        render: Render,
    },
}

pub fn run(cmd: DesignCmd) -> CmdResult {
    match cmd {
        DesignCmd::Gen { kind, order, out, render } => gen(kind, order, out, render),
        DesignCmd::Verify { input, tol } => verify(input, tol),
        DesignCmd::Encode { input, out, render } => encode(input, out, render),
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::usage(e.to_string()))
}

fn gen(kind: GenKind, order: usize, out: Option<PathBuf>, style: Render) -> CmdResult {
    let (text, shown) = match kind {
        GenKind::Ls => {
            let l = cyclic_latin(order)?;
            (Design::Ls(l.clone()).to_json()?, render::latin(&l, style))
        }
        GenKind::Mols => {
            let squares = mols_construct(order)?;
            let files: Vec<DesignFile> = squares.iter().map(|l| Design::Ls(l.clone()).to_file()).collect();
            let shown = squares.iter().map(|l| render::latin(l, style)).collect::<Vec<_>>().join("\n\n");
            (json(&files)?, shown)
        }
        GenKind::Ols => {
            let p = mols_pair(order)?;
            (Design::Ols(p.clone()).to_json()?, render::pair(&p, style))
        }
    };
    let mut report = shown;
    match &out {
        Some(path) => {
            write(path, &text)?;
            report.push_str(&format!("\nwritten to {}", path.display()));
        }
        None => {
            report.push('\n');
            report.push_str(&text);
        }
    }
    Ok(CommandOutcome::new(true, report).with_artifact(out.as_deref()))
}

/// A design file holds one design or, for `mols`, an array of Latin squares.
fn load_files(input: &PathBuf) -> Result<Vec<DesignFile>, Failure> {
    let text = read(input)?;
    let value: serde_json::Value = parse(input, &text)?;
    if value.is_array() {
        parse(input, &text)
    } else {
        Ok(vec![parse(input, &text)?])
    }
}

fn load(input: &PathBuf) -> Result<Vec<Design>, Failure> {
    load_files(input)?.into_iter().map(|f| Design::from_file(f).map_err(Failure::from)).collect()
}

fn verify(input: PathBuf, tol: f64) -> CmdResult {
    let files = load_files(&input)?;
    let many = files.len() > 1;
    let mut designs = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for (k, file) in files.into_iter().enumerate() {
        let label = |kind: &str| if many { format!("#{k} {kind}") } else { kind.to_string() };
        let design = match file {
            DesignFile::Ls { cells, .. } => {
                let v = latin_violations(&cells);
                ok &= v.is_empty();
                lines.push(format!("{}: {} violations", label("ls"), v.len()));
                lines.extend(v.iter().map(|(line, i)| format!("  repeated symbol in {line:?} {i}")));
                if let Ok(l) = LatinSquare::new(cells) {
                    designs.push(Design::Ls(l));
                }
                continue;
            }
            DesignFile::Ols { ranks, suits, .. } => {
                let rep = check_conditions(&ranks, &suits).map_err(|e| Failure::usage(e.to_string()))?;
                ok &= rep.is_valid();
                lines.push(format!("{}: {} distinct cards of {}", label("ols"), rep.distinct_pairs, rep.d * rep.d));
                lines.extend(
                    rep.violations.iter().map(|v| format!("  {:?} at {:?}: {}", v.condition, v.cells, v.detail)),
                );
                continue;
            }
            other => Design::from_file(other).map_err(|e| Failure::usage(e.to_string()))?,
        };
        let label = label(design.kind());
        match &design {
            Design::Ls(_) | Design::Ols(_) => unreachable!("handled as raw grids"),
            Design::Qls(q) => {
                let rep = qls_verify(q, tol)?;
                ok &= rep.passed();
                lines.push(format!(
                    "{label}: max row residual {}, max column residual {} (tol {})",
                    num(rep.max_row_residual),
                    num(rep.max_column_residual),
                    num(tol)
                ));
                lines.extend(rep.violations.iter().map(|(row, line, i, j, r)| {
                    format!("  {} {line}: cells {i}, {j} residual {}", if *row { "row" } else { "column" }, num(*r))
                }));
            }
            Design::Qols(q) => {
                let rep = qols_verify(q, tol)?;
                ok &= rep.passed();
                lines.push(format!("{label}: max residual {} (tol {})", num(rep.max_residual()), num(tol)));
                for (family, r) in &rep.residuals {
                    lines.push(format!("  {family:?} {}", num(*r)));
                }
                lines.extend(rep.violations.iter().map(|v| format!("  {v:?}")));
            }
            Design::Oa(a) => {
                let rep = oa_verify(a)?;
                ok &= rep.is_valid();
                lines.push(format!("{label}: {} projections checked", rep.projections_checked));
                lines.extend(rep.violations.iter().map(|v| format!("  columns {:?}: {}", v.columns, v.detail)));
            }
            Design::Qoa(a) => {
                let rep = qoa_verify(a, tol)?;
                ok &= rep.is_valid();
                lines.push(format!("{label}: {} projections checked (tol {})", rep.projections_checked, num(tol)));
                lines.extend(rep.violations.iter().map(|v| format!("  parties {:?}: {}", v.columns, v.detail)));
            }
        }
        designs.push(design);
    }
    if designs.len() > 1 && designs.iter().all(|d| matches!(d, Design::Ls(_))) {
        for a in 0..designs.len() {
            for b in a + 1..designs.len() {
                if let (Design::Ls(x), Design::Ls(y)) = (&designs[a], &designs[b]) {
                    if let Ok(p) = OrthogonalLatinPair::new(x.clone(), y.clone()) {
                        let n = p.distinct_pairs();
                        if n != p.d() * p.d() {
                            ok = false;
                            lines.push(format!("squares #{a} and #{b} are not orthogonal: {n} distinct pairs"));
                        }
                    }
                }
            }
        }
    }
    lines.push(if ok { "PASS".into() } else { "FAIL".into() });
    Ok(CommandOutcome::new(ok, lines.join("\n")))
}

fn encode(input: PathBuf, out: Option<PathBuf>, style: Render) -> CmdResult {
    let designs = load(&input)?;
    let pair = match designs.as_slice() {
        [Design::Ols(p)] => p.clone(),
        _ => return Err(Failure::usage("encode needs a single ols design")),
    };
    let p = ols_to_permutation(&pair)?;
    let mut report = render::permutation(&p, style);
    if let Some(path) = &out {
        write(path, &json(&p)?)?;
        report.push_str(&format!("\nwritten to {}", path.display()));
    }
    Ok(CommandOutcome::new(true, report).with_artifact(out.as_deref()))
}
