//! Command line front end: loads a quiver, runs one pipeline and prints a JSON report.

mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::report::EXIT_USAGE;

#[derive(Parser)]
#[command(
    name = "hallforge",
    version,
    about = "Exact Hall algebra computations for quiver representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List isomorphism classes of a dimension vector, or up to a total dimension.
    Classes(RunArgs),
    /// Tabulate Hall numbers for all middle terms up to a total dimension.
    Hall(RunArgs),
    /// Check Green's formula on every quadruple up to a total dimension.
    Green(RunArgs),
    /// Tabulate the four-term coefficients up to a total dimension.
    Gamma(RunArgs),
    /// Multiply two graded objects.
    DhaMul(RunArgs),
    /// Check unit and associativity laws over a family of graded objects.
    DhaAssoc(RunArgs),
    /// Check the relations of the generator presentations.
    Relations(RunArgs),
    /// Compare products with an independent route (rewriting at t=0, counting at t=1).
    Crosscheck(RunArgs),
}

/// Flags shared by every subcommand; each command reads the ones it needs.
#[derive(Args, Clone, Debug, Serialize)]
pub struct RunArgs {
    /// Quiver description (JSON with `vertices` and `arrows`).
    #[arg(long)]
    #[serde(skip)]
    pub quiver: PathBuf,
    /// Prime field size.
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Period: 0 for bounded complexes, or an odd positive integer.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<i64>,
    /// Dimension bound; its meaning depends on the command.
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// A dimension vector, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dim: Option<Vec<usize>>,
    /// Left factor, e.g. "[k1@0, k2@1]".
    #[arg(long)]
    pub lhs: Option<String>,
    /// Right factor.
    #[arg(long)]
    pub rhs: Option<String>,
    /// Restrict `relations` to one family.
    #[arg(long)]
    pub family: Option<String>,
    /// Seed for sampled sweeps.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check this many random triples instead of all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Also write the main table as CSV.
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
    /// Leave `timing_ms` out of the report so that reruns are byte-identical.
    #[arg(long)]
    #[serde(skip)]
    pub no_timing: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let (name, args) = match cli.command {
        Command::Classes(a) => ("classes", a),
        Command::Hall(a) => ("hall", a),
        Command::Green(a) => ("green", a),
        Command::Gamma(a) => ("gamma", a),
        Command::DhaMul(a) => ("dha-mul", a),
        Command::DhaAssoc(a) => ("dha-assoc", a),
        Command::Relations(a) => ("relations", a),
        Command::Crosscheck(a) => ("crosscheck", a),
    };
    match commands::run(name, &args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
