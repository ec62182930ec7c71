//! `veronese`: run the exact verification suite, print geometry tables,
//! export sampled surfaces and run the plane quadratures.
//!
//! Exit codes: 0 success, 1 exact-check failure, 2 usage, 3 I/O,
//! 4 numeric non-convergence.

mod commands;
mod error;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

/// Largest `2s` accepted in exact mode.
pub const TWO_S_CAP: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "veronese", version, about = "Veronese solutions of the CP^{2s} sigma model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the exact verification suite.
    Verify(VerifyArgs),
    /// Print radii, curvatures, Kähler angles and action coefficients.
    Table(TableArgs),
    /// Sample a surface X_k on a grid and export its coordinates.
    Surface(SurfaceArgs),
    /// Integrate the action density or the Gauss–Bonnet integrand.
    Quadrature(QuadratureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Action,
    GaussBonnet,
}

/// `--k <int|all>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelArg {
    All,
    One(usize),
}

fn parse_level(s: &str) -> Result<LevelArg, String> {
    if s == "all" {
        return Ok(LevelArg::All);
    }
    s.parse().map(LevelArg::One).map_err(|_| format!("expected an integer or `all`, got `{s}`"))
}

#[derive(Debug, Args)]
struct Common {
    /// The order N = 2s of the model, 1 ≤ N ≤ 8.
    #[arg(long = "two-s")]
    two_s: usize,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "all", value_parser = parse_level)]
    k: LevelArg,
    /// Suite name (el, projector, routes, spin, geometry, radius, krawtchouk) or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_parser = parse_level)]
    k: LevelArg,
    /// Points per axis (at least 2).
    #[arg(long, default_value_t = 21)]
    grid: usize,
    /// Half-width R of the sampled square [-R, R]².
    #[arg(long, default_value_t = 3.0)]
    radius: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "all", value_parser = parse_level)]
    k: LevelArg,
    #[arg(long, value_enum)]
    which: Which,
    /// Absolute error target.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Integrand evaluations after which refinement gives up.
    #[arg(long, default_value_t = 1_000_000)]
    max_evaluations: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify(args) => commands::verify(&args),
        Command::Table(args) => commands::table(&args),
        Command::Surface(args) => commands::surface(&args),
        Command::Quadrature(args) => commands::quadrature(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
