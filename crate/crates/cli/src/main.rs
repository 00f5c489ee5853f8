//! `qwalk`: simulate, predict and verify quantum-walk search on the weighted
//! barbell graph.
//!
//! Exit status: 0 on success, 1 when `verify-spin` runs but the check fails,
//! 2 for invalid input or I/O errors, 3 for numerical failures.

mod options;
mod output;
mod predict;
mod simulate;
mod sweep;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qwalk::tolerance;

#[derive(Parser, Debug)]
#[command(name = "qwalk", version, about = "Quantum-walk search on the weighted barbell graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Probability series for one- or two-stage search
    Simulate(simulate::SimulateArgs),
    /// Critical weights and large-N runtimes and success probabilities
    Predict(predict::PredictArgs),
    /// Check the spin-network construction against the walk
    VerifySpin(verify::VerifySpinArgs),
    /// Peak success probability over a grid of (n, alpha, weight)
    Sweep(sweep::SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeriesFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qwalk::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

fn init_tolerance() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var(tolerance::ENV_VAR) {
        let value = tolerance::parse(&raw).ok_or_else(|| {
            CliError::Config(format!("{} must be a positive number, got `{raw}`", tolerance::ENV_VAR))
        })?;
        // nothing has read the tolerance yet, so this cannot conflict
        let _ = tolerance::set(value);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    init_tolerance()?;
    match cli.command {
        Command::Simulate(args) => simulate::execute(args).map(|_| true),
        Command::Predict(args) => predict::execute(args).map(|_| true),
        Command::VerifySpin(args) => verify::execute(args),
        Command::Sweep(args) => sweep::execute(args).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
