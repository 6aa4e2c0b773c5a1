mod design;
mod outcome;
mod render;
mod search;
mod state;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use outcome::{CmdResult, EXIT_USAGE};
use render::Render;

#[derive(Debug, Parser)]
#[command(name = "qeuler", version, about = "Orthogonal Latin squares, AME states and 2-unitary search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate, verify and encode designs.
    #[command(subcommand)]
    Design(design::DesignCmd),
    /// Build and check multipartite states.
    #[command(subcommand)]
    State(state::StateCmd),
    /// Multi-seed search for 2-unitary matrices.
    Search(search::SearchArgs),
    /// Enumerate all 2-unitary permutation matrices of order dim².
    Bruteforce {
        #[arg(long)]
        dim: usize,
        /// Print every matrix found.
        #[arg(long)]
        show: bool,
        #[arg(long, value_enum, default_value = "digits")]
        render: Render,
    },
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Design(c) => design::run(c),
        Command::State(c) => state::run(c),
        Command::Search(a) => search::search(a),
        Command::Bruteforce { dim, show, render } => search::bruteforce(dim, show, render),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(outcome) => {
            let _ = writeln!(std::io::stdout().lock(), "{}", outcome.report);
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
