use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corecut::{Tau, Variant};

#[derive(Parser, Debug)]
#[command(name = "corecut", version, about = "Vanilla and regularized spectral clustering for sparse graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep-cut partition from the second eigenvector.
    Partition(PartitionArgs),
    /// Smallest Laplacian eigenvalues.
    Spectrum(SpectrumArgs),
    /// Count g-dangling sets.
    DanglingCensus(CensusArgs),
    /// Sample a generator spec and write the edge list.
    Simulate(SimulateArgs),
    /// Train/test overfitting protocol over several seeds.
    OverfitBench(OverfitArgs),
    /// Conductance and CoreCut of listed node sets.
    CorecutTable(TableArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// SNAP-style edge list.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generator spec (TOML).
    #[arg(long)]
    pub gen_spec: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Common {
    #[command(flatten)]
    pub source: Source,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct Regularizer {
    /// Regularization strength: a number or `avg-degree`.
    #[arg(long, default_value = "avg-degree", value_parser = parse_tau)]
    pub tau: Tau,
    #[arg(long, value_enum, default_value_t = VariantArg::DegreeOnly)]
    pub variant: VariantArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    EdgeWise,
    DegreeOnly,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::EdgeWise => Variant::EdgeWise,
            VariantArg::DegreeOnly => Variant::DegreeOnly,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScoringArg {
    Raw,
    Regularized,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub reg: Regularizer,
    #[arg(long, value_enum, default_value_t = ScoringArg::Raw)]
    pub scoring: ScoringArg,
    /// Write 0 for wall_time_ms so repeated runs are byte-identical.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub reg: Regularizer,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..))]
    pub g_max: u64,
    /// Count sets in components smaller than 10g as well.
    #[arg(long)]
    pub no_component_clause: bool,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub gen_spec: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct OverfitArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub reg: Regularizer,
    /// Fraction of edges kept for training.
    #[arg(long, default_value_t = 0.5, value_parser = parse_fraction)]
    pub split: f64,
    /// Number of consecutive seeds starting at `--seed`.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub seeds: u64,
    /// Write 0 for wall_time_ms so repeated runs are byte-identical.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    /// Set list: one set per line, `name` then external node ids, whitespace separated.
    #[arg(long)]
    pub sets: PathBuf,
    /// Regularization strengths to tabulate; numbers or `avg-degree`.
    #[arg(long, value_delimiter = ',', default_value = "avg-degree", value_parser = parse_tau)]
    pub tau: Vec<Tau>,
}

fn parse_tau(s: &str) -> Result<Tau, String> {
    s.parse::<Tau>().map_err(|e| e.to_string())
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let f: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if f > 0.0 && f < 1.0 {
        Ok(f)
    } else {
        Err(format!("must lie strictly between 0 and 1, got {f}"))
    }
}
