//! `graphent` — entropy of finite metric graphs from the command line.
//!
//! The binary is a thin orchestration layer over `graphent-core`: it
//! parses the plain-text graph format (see [`format`]), dispatches to
//! the library, and prints results, graph files, or CSV tables.  All
//! numerical work, including its parallelism, lives in the library;
//! output writing here is single-threaded and ordered, so runs at a
//! fixed seed are byte-for-byte reproducible.
//!
//! Exit codes: `0` success, `1` a verified inequality was violated
//! (`verify` only), `2` unusable input.

#![forbid(unsafe_code)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use graphent_cli::commands::{self, Method, SuiteArg};

/// Entropy, equilibrium measures, and subgraph entropy of metric graphs.
#[derive(Parser)]
#[command(name = "graphent", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the entropy, rank, and component count of a graph file.
    Entropy {
        /// Graph file in the plain-text format.
        input: PathBuf,
    },
    /// Rescale a graph file onto the unit-entropy locus.
    Normalize {
        /// Graph file in the plain-text format.
        input: PathBuf,
        /// Write the normalized file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the equilibrium measure of each edge pair (sums to 1).
    Measure {
        /// Graph file; non-unit input is normalized with a warning.
        input: PathBuf,
    },
    /// Subgraph entropy obtained by removing one edge.
    Subgraph {
        /// Graph file; non-unit input is normalized with a warning.
        input: PathBuf,
        /// Edge identifier from the file.
        #[arg(long)]
        edge: String,
        /// Computation method; `both` also prints the discrepancy.
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Sample the linear blow-up of one edge as a CSV trace.
    Blowup {
        /// Graph file; non-unit input is normalized with a warning.
        input: PathBuf,
        /// Edge identifier from the file.
        #[arg(long)]
        edge: String,
        /// Largest blow-up time sampled.
        #[arg(long, default_value_t = 25.0)]
        horizon: f64,
        /// Number of uniformly spaced samples (at least 2).
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Write the CSV here; without it the CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run randomized inequality sweeps; exit 0 iff every check holds.
    Verify {
        /// Which sweep to run.
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Random samples per suite (0 = emit the CSV header only).
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Base seed; sample k uses seed XOR k, echoed in every row.
        #[arg(long, default_value_t = graphent_core::fixtures::DEFAULT_SEED)]
        seed: u64,
        /// Write the CSV here; without it the CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the unit-entropy lengths of a shape for the smallest
    /// subgraph entropy.
    Minimize {
        /// Graph file fixing the shape (its lengths are ignored).
        input: PathBuf,
        /// Independent simplex restarts.
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        /// Seed for the restart perturbations, echoed in the output.
        #[arg(long, default_value_t = graphent_core::fixtures::DEFAULT_SEED)]
        seed: u64,
        /// Write the per-iteration trace CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Entropy { input } => commands::cmd_entropy(&input),
        Command::Normalize { input, out } => commands::cmd_normalize(&input, out.as_deref()),
        Command::Measure { input } => commands::cmd_measure(&input),
        Command::Subgraph { input, edge, method } => {
            commands::cmd_subgraph(&input, &edge, method)
        }
        Command::Blowup { input, edge, horizon, samples, out } => {
            commands::cmd_blowup(&input, &edge, horizon, samples, out.as_deref())
        }
        Command::Verify { suite, n, seed, out } => {
            commands::cmd_verify(suite, n, seed, out.as_deref())
        }
        Command::Minimize { input, restarts, seed, out } => {
            commands::cmd_minimize(&input, restarts, seed, out.as_deref())
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}
