use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod input;
mod suites;

use input::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "fmonoid", version, about = "Exact computations in Thompson's monoid and its monoid ring")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Coefficient field: q, fp:<p> or generic:<seed>.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Worker threads (default: all cores for census and min-n, else 1).
    #[arg(long, global = true, env = "FMONOID_THREADS")]
    pub threads: Option<usize>,
    /// Keep wall-clock timings in JSON output (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone)]
pub struct Pair {
    /// Left coefficient `a` (text, JSON, or @file).
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Right coefficient `b` (text, JSON, or @file).
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Args, Clone)]
pub struct Range {
    #[arg(long)]
    pub n_from: u32,
    #[arg(long)]
    pub n_to: u32,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Diagonal,
    Shifted,
    Literal,
}

#[derive(Subcommand)]
pub enum Command {
    /// Normal form of a word such as "x1*x0".
    Normalize { word: String },
    /// Product of two polynomials.
    Mul { left: String, right: String },
    /// Least common right multiple of two monomials.
    Lcm {
        left: String,
        right: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// List the elements of a set such as S:3:6.
    Enumerate {
        #[arg(long)]
        set: String,
    },
    /// Size of a set.
    Count {
        #[arg(long)]
        set: String,
    },
    /// Kernel of `a u = b v` with `u`, `v` supported on a set.
    SolvePair {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        support: String,
        /// Stop after this many basis vectors.
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// First solution of a linear system read from a JSON file with
    /// `equations` (rows of polynomial strings) and `supports`.
    SolveSystem { system: String },
    /// Nonzero `(u, v)` with `a u = b v` by reduction on the width.
    Reduce {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 4000)]
        max_support: u64,
        #[arg(long, default_value_t = 24)]
        max_degree: u32,
        /// Keep only the lowest components when both inputs are homogeneous.
        #[arg(long)]
        minimal: bool,
    },
    /// Degree-m solution for linear `a`, `b`.
    ConstructDeg1 {
        /// Coefficients of `a` (comma separated); random when absent.
        #[arg(long, requires = "beta", allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, requires = "alpha", allow_hyphen_values = true)]
        beta: Option<String>,
        /// Degree for random or symbolic coefficients.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Seed for random coefficients.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The degree-2 solution of `(x0 + alpha x2) u = (x1 + beta x2) v`.
    BasicSolution {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Divide by beta.
        #[arg(long)]
        normalized: bool,
    },
    /// A random member of the solution family of degree `d`.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        max_index: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Quotients `u_i` with all `(alpha_i x0 + beta_i x1) u_i` equal.
    Qk {
        /// Pairs `alpha:beta` separated by commas; random when absent.
        #[arg(long, allow_hyphen_values = true)]
        pairs: Option<String>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Reading::Diagonal)]
        reading: Reading,
    },
    /// |X_m S_{m+2,n}| against |S_{m+2,n}|.
    CensusXm {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        range: Range,
    },
    /// Size checks for the Donnelly set and 2-simple preimage counts.
    CensusDonnelly {
        #[command(flatten)]
        range: Range,
    },
    /// |S_{2,4} Y| against its bound; `--formula` evaluates the ratio only.
    CensusS24 {
        #[command(flatten)]
        range: Range,
        #[arg(long)]
        formula: bool,
    },
    /// Kernel dimension over S_{4,n} for each n in range, per prime seed.
    MinN {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 5)]
        n_from: u32,
        #[arg(long)]
        n_to: u32,
        /// Seed count, or a comma-separated list.
        #[arg(long, default_value = "3")]
        seeds: String,
        #[arg(long, default_value_t = 0)]
        seed_base: u64,
        #[arg(long, default_value_t = fmonoid_core::census::DEFAULT_MAX_UNKNOWNS)]
        max_unknowns: u64,
    },
    /// Re-check serialized solutions, or run the reproduction suites.
    Verify {
        /// JSON file holding solution reports.
        report: Option<String>,
        /// Suite to run when no report is given.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Text, a JSON value, or CSV produced by a command.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub csv: Option<String>,
}

impl Output {
    pub fn new(text: String, json: impl Serialize) -> CliResult<Self> {
        Ok(Output {
            text,
            json: serde_json::to_value(json)?,
            csv: None,
        })
    }
}

fn emit(global: &Global, out: &Output) -> CliResult<()> {
    let body = match global.format {
        Format::Text => out.text.clone(),
        Format::Json => serde_json::to_string_pretty(&out.json)? + "\n",
        Format::Csv => out
            .csv
            .clone()
            .ok_or_else(|| CliError::Input("this command has no CSV output".into()))?,
    };
    match &global.output {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let parallel = matches!(
        cli.command,
        Command::CensusXm { .. }
            | Command::CensusDonnelly { .. }
            | Command::CensusS24 { .. }
            | Command::MinN { .. }
            | Command::Verify { .. }
    );
    let threads = cli.global.threads.or(if parallel { None } else { Some(1) });
    if let Some(t) = threads {
        // ignore failure: a pool may already exist
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let result = commands::run(&cli).and_then(|(out, status)| {
        emit(&cli.global, &out)?;
        Ok(status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
