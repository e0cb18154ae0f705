use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use schwarz_regions::Complex64;

use crate::parse;

#[derive(Debug, Parser)]
#[command(
    name = "schwarz-regions",
    version,
    about = "Variability disks and regions of f''''(z0) for self-maps of the unit disk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Center and radius of the disk of f^(k)(z0).
    Disk(DiskArgs),
    /// Boundary of the region of f''''(r) with τ free, as CSV.
    Region(RegionArgs),
    /// Monte Carlo checks of membership, attainment and the Peschl equality.
    Verify(VerifyArgs),
    /// Derivatives of an extremal function.
    Eval(EvalArgs),
    /// Invariant derivatives of a Blaschke product and the fourth-order inequality.
    Peschl(PeschlArgs),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexList(pub Vec<Complex64>);

fn complex_list(s: &str) -> Result<ComplexList, String> {
    parse::complex_list(s).map(ComplexList)
}

#[derive(Debug, Args)]
pub struct DiskArgs {
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub z0: Complex64,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub w0: Complex64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub order: u8,
    /// λ,μ,τ in the frame of z0, w0
    #[arg(long, value_parser = complex_list, allow_hyphen_values = true, conflicts_with = "data")]
    pub params: Option<ComplexList>,
    /// w1,w2,w3 = f'(z0), f''(z0), f'''(z0)
    #[arg(long, value_parser = complex_list, allow_hyphen_values = true)]
    pub data: Option<ComplexList>,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub r: f64,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub s: f64,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub lambda: Complex64,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub mu: Complex64,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Append the brute-force hull's support point for each row.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..=10_000_000))]
    pub trials: u64,
    #[arg(long, env = "SCHWARZ_REGIONS_SEED", default_value_t = 7)]
    pub seed: u64,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub z0: Option<Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, requires = "z0")]
    pub w0: Option<Complex64>,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=16))]
    pub max_degree: u8,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub z0: Complex64,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub w0: Complex64,
    #[arg(long, value_parser = complex_list, allow_hyphen_values = true)]
    pub params: ComplexList,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub alpha: Complex64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(4..=8))]
    pub order: u8,
}

#[derive(Debug, Args)]
pub struct PeschlArgs {
    #[arg(long, value_parser = complex_list, allow_hyphen_values = true)]
    pub zeros: ComplexList,
    #[arg(long, default_value_t = 0.0, value_parser = parse::real, allow_hyphen_values = true)]
    pub rotation: f64,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub at: Complex64,
}
