//! `hkc`: verification runs and quick curvature tables on the canonical
//! 3-Sasakian sphere.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hkc_core::harness::{self, parse_suites, RunConfig, Suite};
use hkc_core::numlin::{Alpha, DiffScheme};
use hkc_core::{tolerances, GeometryError};

const SEED_ENV: &str = "HKC_SEED";

#[derive(Parser)]
#[command(
    name = "hkc",
    version,
    about = "Verify curvature identities of the H-connection on S^(4n+3)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Print the holomorphic sectional curvature table for one structure.
    Curvature(CurvatureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Exact,
    Fd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// Overridden by HKC_SEED when set.
    #[arg(long, default_value_t = RunConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = tolerances::FIRST_DERIVATIVE)]
    tol_first: f64,
    #[arg(long, default_value_t = tolerances::SECOND_DERIVATIVE)]
    tol_second: f64,
    #[arg(long, value_enum, default_value_t = Scheme::Exact)]
    scheme: Scheme,
    /// Step of the central-difference scheme.
    #[arg(long, default_value_t = 1e-5)]
    fd_step: f64,
    /// Comma-separated suite names; all suites when omitted.
    #[arg(long)]
    suites: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Flip the sign of I_2 to exercise the failure path.
    #[arg(long, hide = true)]
    break_i2: bool,
}

#[derive(Args)]
struct CurvatureArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = RunConfig::default().seed)]
    seed: u64,
    /// Structure index, 1 to 3.
    #[arg(long, default_value_t = 1)]
    alpha: u8,
    #[arg(long, default_value_t = 10)]
    points: usize,
}

#[derive(Debug)]
enum CliError {
    Geometry(GeometryError),
    Io(String),
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Geometry(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Geometry(e) => write!(f, "{e}"),
            CliError::Io(m) => f.write_str(m),
        }
    }
}

fn seed_override(seed: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            GeometryError::InvalidConfig(format!(
                "{SEED_ENV}={v:?} is not a 64-bit unsigned integer"
            ))
            .into()
        }),
        Err(_) => Ok(seed),
    }
}

fn verify(args: VerifyArgs) -> Result<i32, CliError> {
    let scheme = match args.scheme {
        Scheme::Exact => DiffScheme::ExactForward,
        Scheme::Fd => DiffScheme::central(args.fd_step)?,
    };
    let suites = match &args.suites {
        Some(list) => parse_suites(list)?,
        None => Suite::ALL.to_vec(),
    };
    let config = RunConfig {
        n: args.n,
        points: args.points,
        seed: seed_override(args.seed)?,
        tol_first: args.tol_first,
        tol_second: args.tol_second,
        scheme,
        suites,
        break_i2: args.break_i2,
    };
    let report = harness::run_suite(&config)?;
    let mut body = match args.format {
        Format::Json => harness::to_json(&report, true),
        Format::Text => harness::to_text(&report),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &args.out {
        Some(path) => {
            fs::write(path, body)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            eprintln!(
                "{:?}: {} records, {} failed",
                report.status, report.summary.records, report.summary.failed
            );
        }
        None => print!("{body}"),
    }
    Ok(report.status.exit_code())
}

fn curvature(args: CurvatureArgs) -> Result<i32, CliError> {
    let alpha = Alpha::new(args.alpha)?;
    let rows = harness::holomorphic_table(args.n, seed_override(args.seed)?, args.points)?;
    println!(
        "{:>6} {:>22} {:>22} {:>12}",
        "sample",
        format!("Hbar_{}", alpha.get()),
        "sum",
        "sum - 12"
    );
    let mut worst: f64 = 0.0;
    for r in &rows {
        let dev = r.sum - 12.0;
        worst = worst.max(dev.abs());
        println!(
            "{:>6} {:>22.15} {:>22.15} {:>12.3e}",
            r.sample,
            r.hbar[alpha.index()],
            r.sum,
            dev
        );
    }
    let ok = worst <= tolerances::HOLOMORPHIC;
    println!(
        "sum check: max |sum - 12| = {worst:.3e} ({})",
        if ok { "pass" } else { "fail" }
    );
    Ok(if ok { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Curvature(a) => curvature(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
