//! Front end for `forge`: argument types, the subcommands, and report output.

pub mod commands;
pub mod files;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::{CliError, Report};

#[derive(Debug, Parser)]
#[command(name = "forge", version, about = "Free symmetric and unitary pairs in nilpotent group algebras")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a catalog pair, check its stars and closed forms, search for relations.
    Pairs(PairsArgs),
    /// Find a star-invariant Heisenberg subgroup of a nilpotent group.
    Extract(ExtractArgs),
    /// Image of a Laurent polynomial or a catalog pair in the symbol algebra.
    Specialize(SpecializeArgs),
    /// Series checks on the free nilpotent group of class two and rank two.
    Series(SeriesArgs),
    /// Freeness certificate for a pair.
    Certify(CertifyArgs),
    /// Quick battery over every module.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    Symmetric,
    Unitary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OracleArg {
    Auto,
    Exact,
    Modular,
}

#[derive(Debug, Args, Serialize)]
pub struct PairsArgs {
    /// Involution case 1, 2 or 3 of the main family.
    #[arg(long, requires = "kind", conflicts_with = "pair")]
    pub case: Option<u8>,
    #[arg(long, requires = "case")]
    pub kind: Option<KindArg>,
    /// Catalog id such as `main-1-symmetric` or `normal-2-pow1`.
    #[arg(long, required_unless_present = "case")]
    pub pair: Option<String>,
    /// Symbol algebra degree; defaults to the pair's own.
    #[arg(long)]
    pub q: Option<u64>,
    /// Characteristic, 0 or a prime.
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    /// Relation search bound.
    #[arg(long, default_value_t = 6)]
    pub len: usize,
    #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
    pub oracle: OracleArg,
}

#[derive(Debug, Args, Serialize)]
pub struct ExtractArgs {
    #[arg(long)]
    pub group: PathBuf,
    #[arg(long)]
    pub involution: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SpecializeArgs {
    /// Laurent polynomial in x, y, z such as `1 + x*y^5 - y^-5*x`.
    #[arg(long, required_unless_present = "pair", conflicts_with = "pair")]
    pub expr: Option<String>,
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    /// Substitute `x^n` for `x` before specializing.
    #[arg(long, default_value_t = 1)]
    pub x_power: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct SeriesArgs {
    /// Truncation point as a word in x, y, c.
    #[arg(long, default_value = "x^3")]
    pub frontier: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Test hook: doubles the two-cocycle on nontrivial arguments.
    #[arg(long)]
    pub corrupt_tau: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    #[arg(long)]
    pub pair: String,
    /// `relation-search` or `pingpong-gl14`.
    #[arg(long, default_value = "relation-search")]
    pub method: String,
    #[arg(long, default_value_t = 6)]
    pub bound: usize,
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[arg(long)]
    pub q: Option<u64>,
    /// Valuation criterion descriptor (JSON) for the ping-pong method.
    #[arg(long)]
    pub criterion: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
    pub oracle: OracleArg,
}

#[derive(Debug, Args, Serialize)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random samples per randomized battery.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

/// Runs one subcommand to a finished report.
pub fn run(command: &Command) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match command {
        Command::Pairs(a) => commands::pairs::run(a)?,
        Command::Extract(a) => commands::extract::run(a)?,
        Command::Specialize(a) => commands::specialize::run(a)?,
        Command::Series(a) => commands::series::run(a)?,
        Command::Certify(a) => commands::certify::run(a)?,
        Command::Selftest(a) => commands::selftest::run(a)?,
    };
    report.finish(start.elapsed().as_millis());
    Ok(report)
}
