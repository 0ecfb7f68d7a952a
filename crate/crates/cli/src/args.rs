use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "codedel", version, about = "Uncoordinated multi-source delivery experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact distribution of distinct symbols received per step.
    Chain(ChainArgs),
    /// Storage factor vs transmission factor curves.
    Tradeoff(TradeoffArgs),
    /// Decoding probability over a grid of RLN/RS/LDPC mixtures.
    Mixture(MixtureArgs),
    /// Decoding probability with extra symbols beyond k.
    Overhead(OverheadArgs),
    /// Same-code Monte-Carlo completion times against the exact chain.
    SimulateSame(SimulateSameArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Chain(_) => "chain",
            Command::Tradeoff(_) => "tradeoff",
            Command::Mixture(_) => "mixture",
            Command::Overhead(_) => "overhead",
            Command::SimulateSame(_) => "simulate-same",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Chain(a) => &a.common,
            Command::Tradeoff(a) => &a.common,
            Command::Mixture(a) => &a.common,
            Command::Overhead(a) => &a.common,
            Command::SimulateSame(a) => &a.common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Table format [default: csv].
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// TOML file with default parameters and code descriptors.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Divide trial counts by 10.
    #[arg(long)]
    pub quick: bool,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Block length [default: 50].
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of storage systems [default: 2].
    #[arg(long = "S")]
    pub sources: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TradeoffArgs {
    /// Comma-separated source counts; `inf` for the many-source limit
    /// [default: 1,2,4,8,inf].
    #[arg(long = "S")]
    pub sources: Option<String>,
    /// Comma-separated block lengths; `inf` for the asymptotic curve
    /// [default: inf].
    #[arg(long)]
    pub n: Option<String>,
    /// Storage-factor grid step [default: 0.05].
    #[arg(long)]
    pub step: Option<f64>,
    /// Largest storage factor [default: 4].
    #[arg(long)]
    pub sigma_max: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct MixtureArgs {
    /// Grid step in symbols [default: 8].
    #[arg(long)]
    pub step: Option<usize>,
    /// Trials per grid point [default: 2000].
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed [default: 1].
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct OverheadArgs {
    /// Comma-separated base symbol counts per source [default: 43,43,42].
    #[arg(long)]
    pub mixture: Option<String>,
    /// Largest number of extra symbols [default: 3].
    #[arg(long)]
    pub extra: Option<usize>,
    /// Trials per point [default: 20000].
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed [default: 1].
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SimulateSameArgs {
    /// Block length [default: 50].
    #[arg(long)]
    pub n: Option<usize>,
    /// Symbols needed to decode [default: 35].
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of storage systems [default: 2].
    #[arg(long = "S")]
    pub sources: Option<usize>,
    /// Trials [default: 100000].
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed [default: 1].
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}
