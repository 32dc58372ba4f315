use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seidel_core::DetMode;

#[derive(Parser, Debug)]
#[command(
    name = "seidel",
    version,
    about = "Seidel matrix determinants, spectra and experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalues of S(G), ascending.
    Spectrum(SpectrumArgs),
    /// Exact det S(G) and its comparison with n - 1.
    Det(DetArgs),
    /// Seidel energy and p-energies.
    Energy(EnergyArgs),
    /// Every labeled graph of one order.
    Exhaustive(ExhaustiveArgs),
    /// Proportion of uniform random graphs with det S >= n - 1.
    Montecarlo(MonteCarloArgs),
    /// Scaled spectral tails against the semicircle law.
    Semicircle(SemicircleArgs),
    /// |det S| against n^(alpha n).
    Growth(GrowthArgs),
    /// Determinant condition against the p-energy condition on random graphs.
    Equivalence(EquivalenceArgs),
    /// Convert between graph6 and edge lists.
    Convert(ConvertArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// A single graph6 string.
    #[arg(long, conflicts_with = "input")]
    pub graph6: Option<String>,
    /// File of graph6 strings, one per line.
    #[arg(long, required_unless_present = "graph6")]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit a CSV table instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RunOptions {
    /// Worker threads (0 = one per core). Never changes the report.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SeedArg {
    /// Master seed; falls back to SEIDEL_SEED, then to a fresh random seed.
    #[arg(long, env = "SEIDEL_SEED")]
    pub seed: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Absolute,
    Signed,
}

impl From<ModeArg> for DetMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Absolute => DetMode::Absolute,
            ModeArg::Signed => DetMode::Signed,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Edgelist,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub graphs: GraphInput,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct DetArgs {
    #[command(flatten)]
    pub graphs: GraphInput,
    #[arg(long, value_enum, default_value = "absolute")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub graphs: GraphInput,
    /// Exponents in (0, 2), comma separated.
    #[arg(long = "p", value_delimiter = ',', value_parser = parse_p, default_values_t = default_p())]
    pub p: Vec<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct ExhaustiveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "absolute")]
    pub mode: ModeArg,
    #[arg(long = "p", value_delimiter = ',', value_parser = parse_p, default_values_t = default_p())]
    pub p: Vec<f64>,
    /// Largest order enumerated without complaint.
    #[arg(long, default_value_t = seidel_core::graph::DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
    /// Include one record per graph.
    #[arg(long)]
    pub records: bool,
    #[command(flatten)]
    pub run: RunOptions,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct MonteCarloArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub trials: u64,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value = "absolute")]
    pub mode: ModeArg,
    /// Include each sampled graph as graph6.
    #[arg(long)]
    pub records: bool,
    #[command(flatten)]
    pub run: RunOptions,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SemicircleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub samples: u64,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Tail thresholds in [0, 2], comma separated.
    #[arg(long = "b-grid", value_delimiter = ',', value_parser = parse_b,
          default_values_t = seidel_core::experiments::DEFAULT_B_GRID.to_vec())]
    pub b_grid: Vec<f64>,
    /// Threshold b of the counting inequality; needs tail(b) > 1/2.
    #[arg(long, value_parser = parse_b, default_value_t = seidel_core::experiments::DEFAULT_PROOF_B)]
    pub b: f64,
    /// Margin delta in (0, c - 1/2).
    #[arg(long, value_parser = parse_positive)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 24)]
    pub bins: usize,
    #[arg(long, value_parser = parse_positive, default_value_t = 0.25)]
    pub bin_width: f64,
    /// Also write the min |lambda| sqrt(n) histogram as CSV to this file.
    #[arg(long)]
    pub histogram: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunOptions,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    /// Orders, comma separated.
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub trials: u64,
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: f64,
    #[command(flatten)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub run: RunOptions,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct EquivalenceArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub trials: u64,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value = "absolute")]
    pub mode: ModeArg,
    #[arg(long = "p", value_delimiter = ',', value_parser = parse_p, default_values_t = default_p())]
    pub p: Vec<f64>,
    #[command(flatten)]
    pub run: RunOptions,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub from: Format,
    #[arg(long, value_enum)]
    pub to: Format,
    /// Input file; standard input when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn default_p() -> Vec<f64> {
    seidel_core::experiments::DEFAULT_P_GRID.to_vec()
}

fn parse_float(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| format!("{s:?} is not a number: {e}"))
}

fn parse_p(s: &str) -> Result<f64, String> {
    let p = parse_float(s)?;
    if p > 0.0 && p < 2.0 {
        Ok(p)
    } else {
        Err(format!("p = {p} violates 0 < p < 2"))
    }
}

fn parse_b(s: &str) -> Result<f64, String> {
    let b = parse_float(s)?;
    if (0.0..=2.0).contains(&b) {
        Ok(b)
    } else {
        Err(format!("b = {b} violates 0 <= b <= 2"))
    }
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a = parse_float(s)?;
    if (0.0..0.5).contains(&a) {
        Ok(a)
    } else {
        Err(format!("alpha = {a} violates 0 <= alpha < 1/2"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x = parse_float(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{x} must be positive"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsers() {
        assert!(parse_p("0.5").is_ok());
        assert!(parse_p("2").unwrap_err().contains("0 < p < 2"));
        assert!(parse_p("0").is_err());
        assert!(parse_b("2").is_ok());
        assert!(parse_b("2.1").unwrap_err().contains("0 <= b <= 2"));
        assert!(parse_alpha("0.5").unwrap_err().contains("alpha"));
        assert!(parse_alpha("0").is_ok());
        assert!(parse_float("x").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
