//! Built-in numerical self-checks.

use std::process::ExitCode;

use clap::Args;

use kd_core::verify::run_verify;

use crate::commands::init_threads;
use crate::CliError;

/// Environment override for the wave-check grid size; handy for watching
/// the sampling guards trip on a deliberately coarse grid.
pub const SAMPLES_ENV: &str = "KD_VERIFY_SAMPLES";

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Grid size for the wave-optics checks (default 16384; the
    /// KD_VERIFY_SAMPLES environment variable overrides the default, and
    /// this flag overrides both).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

pub fn run(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    init_threads(args.threads)?;

    let samples = match (args.samples, std::env::var(SAMPLES_ENV)) {
        (Some(n), _) => Some(n),
        (None, Ok(raw)) => Some(raw.parse().map_err(|_| {
            CliError::Config(format!("{SAMPLES_ENV} must be a sample count, got '{raw}'"))
        })?),
        (None, Err(_)) => None,
    };

    let results = run_verify(samples);
    let mut failed = 0usize;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("{status} {:<22} {}", r.name, r.detail);
        failed += usize::from(!r.pass);
    }
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", results.len());
        return Ok(ExitCode::FAILURE);
    }
    println!("all {} checks passed", results.len());
    Ok(ExitCode::SUCCESS)
}
