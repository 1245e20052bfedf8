mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Blocking sets, line covers and the arithmetic checks around them.
#[derive(Parser)]
#[command(name = "blockset", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build, check and transform planes.
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Blocking sets of affine planes and covers of projective planes.
    #[command(subcommand)]
    Blocking(BlockingCmd),
    /// Exhaustive and randomized checks of the counting arguments.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
pub enum PlaneCmd {
    /// Build a plane from its coordinates. `--q` is the field order for
    /// pg and ag, and the base field order for hall (plane order q²).
    Build {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Verify the plane axioms of a file, optionally sampling for a
    /// non-Desarguesian configuration.
    Check {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Number of perspective triangle pairs to sample.
        #[arg(long, value_name = "SAMPLES")]
        desargues: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the dual of a projective plane.
    Dual {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Write the projective completion of an affine plane.
    Complete {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum BlockingCmd {
    /// Exact minimum blocking set of an affine plane.
    Min {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Greedy blocking set of an affine plane.
    Greedy {
        #[command(flatten)]
        source: Source,
    },
    /// Check whether a point set meets every line.
    Check {
        #[command(flatten)]
        source: Source,
        /// Comma-separated point indices.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<usize>,
    },
    /// The two coordinate axes minus one copy of the origin.
    Axes {
        #[command(flatten)]
        source: Source,
    },
    /// Exact minimum set of lines covering every point but one.
    DualCover {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        point: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Averaging bound against brute force, plus random rebalancing runs.
    Afschatting {
        #[arg(long, default_value_t = 7)]
        b_max: u64,
        #[arg(long, default_value_t = 25)]
        k_max: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Counting identities on random line sets and covers.
    Counts {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact integer audit of the inequalities over a range of orders.
    Inequalities {
        #[arg(long, default_value_t = 2)]
        q_min: u64,
        #[arg(long, default_value_t = 10_000)]
        q_max: u64,
    },
    /// Solve the final spectrum system for every d and b.
    Feasibility {
        #[arg(long, default_value_t = 25)]
        q_min: i64,
        #[arg(long, default_value_t = 200)]
        q_max: i64,
    },
    /// Compare minimum blocking sets of AG(2,q) with minimum covers of the
    /// dual of its completion.
    Duality {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Pg,
    Ag,
    Hall,
}

/// A plane read from a file or built on the spot.
#[derive(Args)]
pub struct Source {
    #[arg(long = "in", value_name = "FILE", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, requires = "q")]
    pub family: Option<Family>,
    #[arg(long, requires = "family")]
    pub q: Option<u64>,
}

#[derive(Args)]
pub struct SearchArgs {
    /// Stop after this many search nodes and report the best set found.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, env = "BLOCKSET_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Single-threaded search with timing left out of the output.
    #[arg(long)]
    pub deterministic: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Plane(cmd) => commands::plane(cmd, cli.format),
        Command::Blocking(cmd) => commands::blocking(cmd, cli.format),
        Command::Verify(cmd) => commands::verify(cmd, cli.format),
    };
    match result {
        Ok(mut out) => {
            if !out.text.ends_with('\n') {
                out.text.push('\n');
            }
            // A closed pipe downstream is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
