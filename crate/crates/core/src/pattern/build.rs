//! Pattern assembly: source-averaged screen intensity through detection.

use rayon::prelude::*;

use crate::error::{KdError, Result};
use crate::params::{derive_beam, joule_to_ev, ExperimentConfig};
use crate::quad::source_nodes_uniform;
use crate::wave::run_chain;
use crate::zurek::{build_report, DecoherenceReport, DEFAULT_DELTA_X_REF};

use super::{DiffractionPattern, PatternMeta};

/// Weighted incoherent mixture of patterns on a shared grid, renormalized to
/// unit area.
pub fn incoherent_sum(
    patterns: &[DiffractionPattern],
    weights: &[f64],
) -> Result<DiffractionPattern> {
    if patterns.is_empty() || patterns.len() != weights.len() {
        return Err(KdError::GridMismatch(format!(
            "need equally many patterns and weights, got {} and {}",
            patterns.len(),
            weights.len()
        )));
    }
    let p0 = &patterns[0];
    for p in &patterns[1..] {
        if p.positions.len() != p0.positions.len()
            || (p.spacing() - p0.spacing()).abs() > 1e-15 * p0.spacing().abs()
            || (p.positions[0] - p0.positions[0]).abs() > 1e-9 * p0.spacing().abs()
        {
            return Err(KdError::GridMismatch(
                "patterns must share one screen grid".into(),
            ));
        }
    }
    let mut density = vec![0.0; p0.density.len()];
    for (p, &w) in patterns.iter().zip(weights) {
        if !(w >= 0.0) {
            return Err(KdError::Domain("mixture weights must be nonnegative".into()));
        }
        for (d, v) in density.iter_mut().zip(&p.density) {
            *d += w * v;
        }
    }
    let mut out = DiffractionPattern {
        positions: p0.positions.clone(),
        density,
        meta: p0.meta,
    };
    normalize_area(&mut out)?;
    Ok(out)
}

/// Convolve with the Gaussian detection response of standard deviation
/// `sigma`. The kernel is truncated at 5σ and discretely normalized, and the
/// result is rescaled to the input area, so detection never creates or
/// destroys probability.
pub fn detection_convolve(pattern: &DiffractionPattern, sigma: f64) -> Result<DiffractionPattern> {
    if sigma < 0.0 {
        return Err(KdError::Domain(format!(
            "detection sigma must be nonnegative, got {sigma} m"
        )));
    }
    if sigma == 0.0 {
        return Ok(pattern.clone());
    }
    let dx = pattern.spacing();
    if dx <= 0.0 {
        return Err(KdError::GridMismatch(
            "pattern needs at least two samples to convolve".into(),
        ));
    }
    let half = ((5.0 * sigma / dx).ceil() as usize).max(1);
    let mut kernel = Vec::with_capacity(2 * half + 1);
    let mut ksum = 0.0;
    for i in -(half as i64)..=(half as i64) {
        let x = i as f64 * dx;
        let v = (-x * x / (2.0 * sigma * sigma)).exp();
        ksum += v;
        kernel.push(v);
    }
    for v in &mut kernel {
        *v /= ksum;
    }

    let n = pattern.density.len();
    let area_in: f64 = pattern.density.iter().sum();
    let density: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = 0.0;
            for (k, &kv) in kernel.iter().enumerate() {
                let j = i as i64 + k as i64 - half as i64;
                if j >= 0 && (j as usize) < n {
                    acc += kv * pattern.density[j as usize];
                }
            }
            acc
        })
        .collect();
    let area_out: f64 = density.iter().sum();
    let fix = if area_out > 0.0 { area_in / area_out } else { 1.0 };
    Ok(DiffractionPattern {
        positions: pattern.positions.clone(),
        density: density.into_iter().map(|d| d * fix).collect(),
        meta: pattern.meta,
    })
}

fn normalize_area(pattern: &mut DiffractionPattern) -> Result<()> {
    let area = pattern.area();
    if !(area > 0.0) {
        return Err(KdError::Domain(format!(
            "pattern area must be positive, got {area}"
        )));
    }
    let inv = 1.0 / area;
    for d in &mut pattern.density {
        *d *= inv;
    }
    Ok(())
}

/// Simulate the detected pattern for one configuration.
///
/// The wall model runs first; the optical chain then propagates at the
/// energy-reduced wavelength. Source incoherence is a uniform
/// Gaussian-weighted ensemble of point-source chains, summed in intensity.
pub fn simulate_pattern(
    cfg: &ExperimentConfig,
) -> Result<(DiffractionPattern, DecoherenceReport)> {
    let report = build_report(cfg, DEFAULT_DELTA_X_REF)?;
    let delta_e_ev = joule_to_ev(report.delta_e);
    let beam = derive_beam(cfg.beam_energy_ev - delta_e_ev)?;

    let nodes = source_nodes_uniform(cfg.source_sigma(), cfg.grid.source_points);
    let fields: Result<Vec<_>> = nodes
        .par_iter()
        .map(|&(chi, _)| run_chain(cfg, chi, &beam))
        .collect();
    let fields = fields?;

    let screen = &fields[0];
    // Intensities are accumulated by index, which is only meaningful if
    // every chain landed on the same screen grid.
    for f in &fields[1..] {
        if f.amplitudes.len() != screen.amplitudes.len()
            || f.spacing != screen.spacing
            || f.origin != screen.origin
        {
            return Err(KdError::GridMismatch(
                "source chains landed on different screen grids".into(),
            ));
        }
    }
    let n = screen.amplitudes.len();
    let mut density = vec![0.0; n];
    for (f, &(_, w)) in fields.iter().zip(&nodes) {
        for (d, a) in density.iter_mut().zip(&f.amplitudes) {
            *d += w * a.norm_sqr();
        }
    }
    let positions: Vec<f64> = (0..n).map(|i| screen.position(i)).collect();

    let meta = PatternMeta {
        intensity: cfg.laser_intensity,
        h_p: cfg.plate_height,
        w1: cfg.slit1_width,
        delta_e_ev,
        lambda_db: beam.lambda_db,
        order_spacing: beam.lambda_db * cfg.dist_laser_screen / (cfg.laser_wavelength / 2.0),
    };
    let mut raw = DiffractionPattern {
        positions,
        density,
        meta,
    };
    normalize_area(&mut raw)?;
    Ok((detection_convolve(&raw, cfg.detection_sigma())?, report))
}
