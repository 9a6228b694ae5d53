use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mcg_cli::commands::{self, VerifyOptions};
use mcg_cli::{CliResult, Report};

#[derive(Parser)]
#[command(name = "mcg", about = "Exact checks of mapping class group relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a relation: homology screen, exact check, filling-system check.
    Verify {
        /// Catalog entry or relation file.
        target: String,
        /// Filling system to use instead of the one in the file.
        #[arg(long, value_delimiter = ',')]
        alexander: Option<Vec<String>>,
        /// Stop after the homology screen.
        #[arg(long)]
        screen_only: bool,
        /// Print every generator image.
        #[arg(long)]
        transcript: bool,
    },
    /// Run a derivation script on closed hosts.
    Derive {
        target: String,
        /// Genera to use instead of the script's `genus` line.
        #[arg(long, value_delimiter = ',')]
        genus: Option<Vec<usize>>,
    },
    /// Cut a surface along named disjoint curves.
    Cut {
        /// Catalog relation, relation file, or `sigma<g>`.
        target: String,
        #[arg(required = true)]
        curves: Vec<String>,
    },
    /// Known bounds on the minimal number of singular fibres.
    Bounds {
        g: usize,
        h: usize,
        /// Exclude the six- and five-twist constructions.
        #[arg(long)]
        prior: bool,
    },
    /// Invariants of the fibration of a monodromy factorization.
    Invariants {
        target: String,
        /// Fibre sum with the trivial bundle over a genus `h` base.
        #[arg(long)]
        sum_trivial: Option<usize>,
    },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run every catalog entry against its recorded outcome.
    Selftest,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

fn run(cmd: Command) -> CliResult<Report> {
    match cmd {
        Command::Verify { target, alexander, screen_only, transcript } => {
            commands::verify(&target, &VerifyOptions { alexander, screen_only, transcript })
        }
        Command::Derive { target, genus } => commands::derive(&target, genus.as_deref()).map(|(r, _)| r),
        Command::Cut { target, curves } => commands::cut(&target, &curves),
        Command::Bounds { g, h, prior } => commands::bounds(g, h, prior),
        Command::Invariants { target, sum_trivial } => commands::invariants_cmd(&target, sum_trivial).map(|(r, _)| r),
        Command::Catalog { action: CatalogAction::List } => Ok(commands::catalog_list()),
        Command::Selftest => Ok(commands::selftest()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(report) => {
            print!("{report}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
