//! Source-width calibration: the incoherent width whose added decoherence
//! at the reference separation matches a target exposure.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;

use kd_core::coherence::{
    antidiagonal_profile, before_laser_ensemble, calibrate_source_width, coherence_ratio,
    DensityMatrixSlice, DEFAULT_SEPARATION_REF,
};
use kd_core::params::{derive_beam, joule_to_ev, ExperimentConfig};
use kd_core::wave::Plane;
use kd_core::{build_report, KdError, DEFAULT_DELTA_X_REF};

use crate::commands::init_threads;
use crate::output::RunWriter;
use crate::{config, CliError};

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// TOML configuration file; its slit1_width_m is the baseline.
    pub config: PathBuf,
    /// Decoherence exposure R to reproduce at the reference separation.
    #[arg(long)]
    pub target_r: f64,
    /// Output root.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Laser-plane coherence profile of a configuration, on the same code path
/// the calibration search uses: the beam runs at its plate-reduced energy
/// and only the antidiagonal is built.
fn antidiagonal_slice(cfg: &ExperimentConfig) -> Result<DensityMatrixSlice, KdError> {
    let report = build_report(cfg, DEFAULT_DELTA_X_REF)?;
    let beam = derive_beam(cfg.beam_energy_ev - joule_to_ev(report.delta_e))?;
    let (fields, weights) = before_laser_ensemble(cfg, &beam)?;
    let (center, antidiagonal) = antidiagonal_profile(&fields, &weights)?;
    Ok(DensityMatrixSlice {
        values: Vec::new(),
        n: 0,
        spacing: fields[0].spacing,
        plane: Plane::BeforeLaser,
        antidiagonal,
        fwhm: 0.0,
        fwhm_window_limited: false,
        center,
    })
}

pub fn run(args: &CalibrateArgs) -> Result<(), CliError> {
    init_threads(args.threads)?;

    let started = Instant::now();
    let loaded = config::load(&args.config)?;
    let mut writer = RunWriter::new(args.out.join(format!("{}_calibrate", loaded.hash)));
    writer.stage("parse", started);

    let search_started = Instant::now();
    let w1 = calibrate_source_width(&loaded.cfg, args.target_r, DEFAULT_SEPARATION_REF)?;
    writer.stage("search", search_started);

    let check_started = Instant::now();
    let baseline = antidiagonal_slice(&loaded.cfg)?;
    let mut calibrated_cfg = loaded.cfg.clone();
    calibrated_cfg.slit1_width = w1;
    let calibrated = antidiagonal_slice(&calibrated_cfg)?;
    let ratio = coherence_ratio(&calibrated, &baseline, DEFAULT_SEPARATION_REF)?;
    writer.stage("check", check_started);

    let mut csv = String::from("target_r,separation_m,w1_m,coherence_ratio,achieved_r\n");
    csv.push_str(&format!(
        "{:e},{:e},{:e},{:e},{:e}\n",
        args.target_r,
        DEFAULT_SEPARATION_REF,
        w1,
        ratio,
        -ratio.ln()
    ));
    writer.add("calibration.csv", csv.into_bytes());

    let dir = writer.commit(&loaded.hash)?;
    println!(
        "calibrated w1 = {w1:e} m for target R = {:e} -> {}",
        args.target_r,
        dir.display()
    );
    println!(
        "coherence ratio at {DEFAULT_SEPARATION_REF:e} m separation: {ratio:e} (R = {:e})",
        -ratio.ln()
    );
    Ok(())
}
