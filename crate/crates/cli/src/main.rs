//! kdsim: electron diffraction off a standing light wave, with decoherence
//! and dissipation from a nearby resistive plate.
//!
//! Subcommands: `simulate` one configuration, `sweep` it across one
//! parameter axis, `calibrate` the incoherent source width against a target
//! decoherence exposure, and `verify` the numerics. Outputs land in
//! hash-named directories so distinct configurations never overwrite each
//! other, and identical configurations reproduce byte-identical files.

mod commands;
mod config;
mod output;
mod svg;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kd_core::KdError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Engine(#[from] KdError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Parser)]
#[command(
    name = "kdsim",
    version,
    about = "Electron diffraction off a standing light wave, \
             with decoherence and dissipation from a nearby resistive plate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration: pattern, peaks, metrics, decoherence report.
    Simulate(commands::simulate::SimulateArgs),
    /// Re-run a configuration across a list of values on one axis.
    Sweep(commands::sweep::SweepArgs),
    /// Find the source width reproducing a target decoherence exposure.
    Calibrate(commands::calibrate::CalibrateArgs),
    /// Run the built-in numerical self-checks.
    Verify(commands::verify::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate(args) => commands::simulate::run(args).map(|()| ExitCode::SUCCESS),
        Command::Sweep(args) => commands::sweep::run(args).map(|()| ExitCode::SUCCESS),
        Command::Calibrate(args) => commands::calibrate::run(args).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => commands::verify::run(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
