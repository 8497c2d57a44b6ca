//! Command implementations and the analysis glue they share.

pub mod calibrate;
pub mod simulate;
pub mod sweep;
pub mod verify;

use kd_core::params::ExperimentConfig;
use kd_core::pattern::{
    contrast, find_peaks, order_shift_or_outermost, PeakSet, DEFAULT_CONTRAST_ORDERS,
    DEFAULT_PROMINENCE,
};
use kd_core::{simulate_pattern, DecoherenceReport, DiffractionPattern, KdError};

use crate::output::MetricsRow;
use crate::CliError;

/// Diffraction order the shift metric tracks: far enough out for the
/// dissipative stretch to resolve, still inside the populated band at the
/// strong-grating working point.
pub const SHIFT_ORDER: i32 = 13;

pub struct RunOutcome {
    pub pattern: DiffractionPattern,
    pub report: DecoherenceReport,
    pub peaks: PeakSet,
    pub metrics: MetricsRow,
}

/// The no-plate variant a plate run's shift is measured against.
pub fn reference_pattern(cfg: &ExperimentConfig) -> Result<DiffractionPattern, KdError> {
    let mut reference = cfg.clone();
    reference.plate_height = None;
    Ok(simulate_pattern(&reference)?.0)
}

/// Relative shift of the tracked order against the reference peaks, falling
/// back to the outermost surviving peak when decoherence has washed out the
/// order labels. None (an empty CSV field) when the measurement is not
/// defined: no reference order to compare against, or no peaks at all.
fn shift_metric(reference: Option<&PeakSet>, peaks: &PeakSet) -> Result<Option<f64>, KdError> {
    let Some(reference) = reference else {
        return Ok(Some(0.0));
    };
    match order_shift_or_outermost(reference, peaks, SHIFT_ORDER) {
        Ok((shift, _fell_back)) => Ok(Some(shift)),
        Err(KdError::OrderMissing { .. }) | Err(KdError::EmptyRegion(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Simulate one configuration and derive its metrics row. `reference` is
/// the peak set of the matching no-plate run; None for runs without a plate
/// (their shift is zero by definition).
pub fn run_one(
    run_id: &str,
    cfg: &ExperimentConfig,
    reference: Option<&PeakSet>,
) -> Result<RunOutcome, CliError> {
    let (pattern, report) = simulate_pattern(cfg)?;
    let peaks = find_peaks(&pattern, DEFAULT_PROMINENCE);
    let contrast = contrast(&pattern, DEFAULT_CONTRAST_ORDERS)?;
    let shift = shift_metric(reference, &peaks)?;
    let metrics = MetricsRow {
        run_id: run_id.to_string(),
        h_p: cfg.plate_height,
        intensity: cfg.laser_intensity,
        w1: cfg.slit1_width,
        delta_e_ev: kd_core::params::joule_to_ev(report.delta_e),
        r_dec: report.r_dec,
        contrast,
        shift,
    };
    Ok(RunOutcome {
        pattern,
        report,
        peaks,
        metrics,
    })
}

/// Install the global worker pool when a thread cap was requested.
pub fn init_threads(threads: Option<usize>) -> Result<(), CliError> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(CliError::Config("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot size the worker pool: {e}")))
}
