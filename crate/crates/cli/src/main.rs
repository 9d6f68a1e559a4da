//! `zetilt`: command-line front end for critical-line zeta statistics.
//!
//! Configuration comes from three layers, weakest first: built-in defaults,
//! an optional flat `key = value` config file (`--config`), and command-line
//! flags. Every run writes `results.json` plus command-specific CSV tables
//! and a `run_manifest.json` into the output directory.
//!
//! Exit codes: 0 success, 1 runtime error (or failed verification), 2
//! completed with quality flags raised, 64 usage error.

mod config;
mod emit;
mod runner;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use config::{parse_config_file, parse_precision, resolve, CliError, CommandKind, Overlay};

#[derive(Parser)]
#[command(
    name = "zetilt",
    version,
    about = "Statistics of the Riemann zeta function on the critical line",
    propagate_version = true
)]
struct Cli {
    /// Flat key=value config file; flags override its entries
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Window height T (the run analyzes [T, 2T])
    #[arg(long = "T", global = true, value_name = "HEIGHT")]
    t: Option<f64>,

    /// Prime cutoff x; defaults to the epsilon-schedule where supported
    #[arg(long, global = true, value_name = "CUTOFF")]
    x: Option<u64>,

    /// Highest moment order to report
    #[arg(long = "kmax", global = true, value_name = "K")]
    k_max: Option<u32>,

    /// Zero-sum shift(s), comma separated
    #[arg(long, global = true, value_name = "A", value_delimiter = ',')]
    alpha: Option<Vec<f64>>,

    /// Grid points per oscillation of the integrand (>= 4)
    #[arg(long, global = true, value_name = "FACTOR")]
    oversample: Option<f64>,

    /// Worker threads for quadrature (1..=512)
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    /// Output directory (default: $ZETILT_OUT, else ./zetilt-out)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Arithmetic mode: double | extended
    #[arg(long, global = true, value_name = "MODE")]
    precision: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weighted distribution of log|zeta| on [T, 2T] against the Gaussian law
    Clt,
    /// Weighted moments of the Dirichlet prime sum Re P(t) up to the cutoff x
    Moments,
    /// Predicted central moments and their Gaussian targets (no quadrature)
    Predict,
    /// Discrete sums of |zeta'(rho)|^2 over shifted zeros
    Gonek,
    /// Exact-arithmetic identity suite (exits nonzero on any failure)
    Verify,
    /// Main terms of twisted second moments for small coefficient sets
    Bchb,
}

impl Command {
    fn kind(&self) -> CommandKind {
        match self {
            Command::Clt => CommandKind::Clt,
            Command::Moments => CommandKind::Moments,
            Command::Predict => CommandKind::Predict,
            Command::Gonek => CommandKind::Gonek,
            Command::Verify => CommandKind::Verify,
            Command::Bchb => CommandKind::Bchb,
        }
    }
}

fn build_config(cli: Cli) -> Result<config::RunConfig, CliError> {
    let precision = cli.precision.as_deref().map(parse_precision).transpose()?;
    let flags = Overlay {
        t: cli.t,
        x: cli.x,
        k_max: cli.k_max,
        alpha: cli.alpha,
        oversample: cli.oversample,
        workers: cli.workers,
        out: cli.out,
        precision,
    };
    let file = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => Overlay::default(),
    };
    resolve(cli.command.kind(), file, flags)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => runner::EXIT_OK,
                _ => runner::EXIT_USAGE,
            };
            // clap renders help to stdout and errors to stderr on its own.
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let config = match build_config(cli) {
        Ok(config) => config,
        Err(e) => return fail(e),
    };

    match runner::run(&config) {
        Ok(code) => {
            println!("artifacts written to {}", config.out.display());
            if code == runner::EXIT_FLAGGED {
                println!("quality flags raised; see results.json");
            }
            ExitCode::from(code)
        }
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("zetilt: {e}");
    let code = match e {
        CliError::Usage(_) => runner::EXIT_USAGE,
        CliError::Runtime(_) => runner::EXIT_RUNTIME,
    };
    ExitCode::from(code)
}
