//! `layered-decomp`: generate graphs, decompose them, verify artifacts, run
//! the exact oracles and sweep fixture directories.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 internal bound violation.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "layered-decomp", version, about = "Good tree decompositions and layered path decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Vertex limit for exact pathwidth.
    #[arg(long, global = true)]
    limit_pw: Option<usize>,
    /// Vertex limit for exact layered pathwidth.
    #[arg(long, global = true)]
    limit_lpw: Option<usize>,
    /// Vertex limit for both graphs of a minor search.
    #[arg(long, global = true)]
    limit_minor: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Summary,
}

/// A graph from a file (`-` for stdin) or from a generator.
#[derive(Debug, Args)]
struct Input {
    /// Edge-list file, or `-` for stdin.
    input: Option<PathBuf>,
    /// Generator spec instead of a file, e.g. "grid 3 4" or "outerplanar 30".
    #[arg(long = "gen", value_name = "SPEC")]
    generator: Option<String>,
    /// Seed for randomized generator specs.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a generated graph as an edge list (or DOT).
    Gen {
        /// Family name: path, cycle, complete, cbt, qk, tplus, grid, tree,
        /// outerplanar, sp, halin.
        family: String,
        params: Vec<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write the fixture corpus as `.edges` files into a directory.
    Fixtures {
        #[arg(default_value = "fixtures")]
        dir: PathBuf,
    },
    /// Run the pipeline and emit both decompositions with their report.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// BFS root for the layering.
        #[arg(long)]
        root: Option<usize>,
    },
    /// Check an artifact (decomposition, SPQR tree, report, minor model or
    /// decompose bundle) against a graph.
    Verify {
        graph: PathBuf,
        artifact: PathBuf,
    },
    /// Run an exact oracle.
    Oracle {
        which: OracleKind,
        #[command(flatten)]
        input: Input,
        /// Pattern graph for `minor`.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Generator spec for the pattern graph.
        #[arg(long)]
        pattern_gen: Option<String>,
    },
    /// Decompose and verify every `.edges` file in a directory (TSV).
    Sweep {
        dir: PathBuf,
        #[arg(long)]
        root: Option<usize>,
    },
    /// Build and print the SPQR tree of a 2-connected graph.
    Spqr {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Pw,
    Lpw,
    Minor,
}

/// How a command failed, mapped to the exit code.
#[derive(Debug)]
enum Failure {
    Verification(String),
    Usage(String),
    Bound(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Bound(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Bound(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
