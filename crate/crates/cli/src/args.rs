//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use nicholson_core::exact::{CoeffKind, GaussRational};
use nicholson_core::sheet::{parse_angle, FunctionKind, SheetedComplex};

use crate::output::Format;

/// Smallest accepted working precision in decimal digits.
pub const MIN_DIGITS: usize = 15;

#[derive(Debug, Parser)]
#[command(name = "nicholson", version, about = "Transition-region Bessel asymptotics: coefficients, remainders, bounds, terminants")]
pub struct Cli {
    /// Output encoding (default: json; `stokes` defaults to csv, `coeffs` to text).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Working precision in significant decimal digits (at least 15).
    #[arg(long, global = true, default_value_t = 50, value_parser = parse_digits)]
    pub digits: usize,
    /// Coefficient cache file, read lazily and updated after the command.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact coefficient polynomials B_n(κ) / D_n(κ), or their exact values.
    Coeffs(CoeffsArgs),
    /// Truncated expansion (plain and re-expanded) against the oracle.
    Eval(EvalArgs),
    /// Error bounds for the equal-order expansion, with the true remainder.
    Bounds(BoundsArgs),
    /// Remainder by quadrature and by subtraction.
    Remainder(RemainderArgs),
    /// The terminant by both evaluation routes.
    Terminant(TerminantArgs),
    /// Stokes-smoothing profile across the Stokes line.
    Stokes(StokesArgs),
    /// Late-coefficient approximation, or the reference table.
    Late(LateArgs),
    /// Quick invariant checks, printed as a pass/fail matrix.
    Selfcheck,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// Coefficient index.
    #[arg(long)]
    pub n: usize,
    /// Evaluate exactly at this rational or Gaussian rational (e.g. `1/3`, `2+2i`).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gauss)]
    pub kappa: Option<GaussRational>,
    /// Coefficient family.
    #[arg(long, default_value = "B", value_parser = parse_coeff_kind)]
    pub kind: CoeffKind,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: FunctionKind,
    /// Point as `r,theta`; theta in radians or multiples of π (`1.5pi`).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    pub z: SheetedComplex,
    /// Order offset κ = z − ν.
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_complex)]
    pub kappa: Complex64,
    /// Number of terms N of the plain expansion.
    #[arg(long)]
    pub terms: usize,
    /// Re-expansion depth K = L (H1 and H1p only).
    #[arg(long)]
    pub hyper: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: FunctionKind,
    /// Order (= argument) ν as `r,theta`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    pub nu: SheetedComplex,
    /// Truncation index N.
    #[arg(long = "N")]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct RemainderArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: FunctionKind,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    pub z: SheetedComplex,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_complex)]
    pub kappa: Complex64,
    /// Truncation index N.
    #[arg(long = "N")]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct TerminantArgs {
    /// Terminant order p > 0.
    #[arg(long)]
    pub p: f64,
    /// Argument as `r,theta` on any sheet.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    pub w: SheetedComplex,
}

#[derive(Debug, Args)]
pub struct StokesArgs {
    /// |z| (at least 5).
    #[arg(long)]
    pub r: f64,
    /// Number of angles, endpoints included (at least 2).
    #[arg(long, default_value_t = 41)]
    pub grid: usize,
    /// First angle (default −π).
    #[arg(long, default_value = "-pi", allow_hyphen_values = true, value_parser = parse_theta)]
    pub theta_min: f64,
    /// Last angle (default 0).
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_theta)]
    pub theta_max: f64,
}

#[derive(Debug, Args)]
pub struct LateArgs {
    /// Reproduce the four-row reference table.
    #[arg(long, conflicts_with_all = ["n", "kappa", "m"])]
    pub table1: bool,
    /// Coefficient index n.
    #[arg(long, required_unless_present = "table1")]
    pub n: Option<usize>,
    /// Parameter κ (rational or Gaussian rational).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gauss)]
    pub kappa: Option<GaussRational>,
    /// Truncation index M.
    #[arg(long = "M", id = "m", required_unless_present = "table1")]
    pub m: Option<usize>,
}

fn parse_digits(s: &str) -> Result<usize, String> {
    let d: usize = s.parse().map_err(|_| format!("'{s}' is not a digit count"))?;
    if d < MIN_DIGITS {
        return Err(format!("precision must be at least {MIN_DIGITS} digits, got {d}"));
    }
    Ok(d)
}

fn parse_kind(s: &str) -> Result<FunctionKind, String> {
    s.parse().map_err(|e: nicholson_core::Error| e.to_string())
}

fn parse_coeff_kind(s: &str) -> Result<CoeffKind, String> {
    match s.trim() {
        "B" | "b" => Ok(CoeffKind::B),
        "D" | "d" => Ok(CoeffKind::D),
        _ => Err(format!("expected B or D, got '{s}'")),
    }
}

fn parse_point(s: &str) -> Result<SheetedComplex, String> {
    s.parse().map_err(|e: nicholson_core::Error| e.to_string())
}

fn parse_theta(s: &str) -> Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

fn parse_gauss(s: &str) -> Result<GaussRational, String> {
    s.parse().map_err(|_| format!("expected a rational or a+bi with rational parts, got '{s}'"))
}

/// κ for floating-point commands: anything the exact parser accepts.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    parse_gauss(s).map(|g| g.to_c64())
}
