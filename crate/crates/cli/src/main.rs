#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod config;
mod error;
mod evolve;
mod fig2;
mod oracle_verify;
mod output;
mod rates_scan;
mod scatter;

use error::{CliError, CliResult};

/// Fields, decay rates and atom dynamics near two-sided semi-transparent
/// mirrors.
#[derive(Debug, Parser)]
#[command(name = "mirrorfield", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frames of a Gaussian packet reflected by a mirror.
    #[command(allow_negative_numbers = true)]
    Fig2(fig2::Fig2Cmd),
    /// Decay rate and level shift against atom-mirror distance.
    #[command(allow_negative_numbers = true)]
    RatesScan(rates_scan::RatesScanCmd),
    /// Check the closed-form rates against independent quadratures.
    OracleVerify(oracle_verify::OracleVerifyCmd),
    /// Integrate the two-level master equation.
    #[command(allow_negative_numbers = true)]
    Evolve(evolve::EvolveCmd),
    /// Frames of a scene of packets and a mirror read from a JSON file.
    #[command(allow_negative_numbers = true)]
    Scatter(scatter::ScatterCmd),
}

const THREADS_VAR: &str = "MIRRORFIELD_THREADS";

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Validation(format!("{THREADS_VAR}={value:?} is not a positive integer"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Validation(format!("cannot start {n} worker threads: {e}")))
}

fn dispatch(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Fig2(c) => fig2::run(c),
        Command::RatesScan(c) => rates_scan::run(c),
        Command::OracleVerify(c) => oracle_verify::run(c),
        Command::Evolve(c) => evolve::run(c),
        Command::Scatter(c) => scatter::run(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed downstream pipe (`| head`) is not a failure
        Err(CliError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mirrorfield: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
