//! Reduced transverse density matrix of the source-averaged beam.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{KdError, Result};
use crate::linalg::hermitian_psd;
use crate::params::{BeamState, ExperimentConfig};
use crate::quad::source_nodes_gh;
use crate::wave::{run_chain_to, Plane, WaveField};

/// Maximum dimension the stored matrix is decimated to. The antidiagonal
/// profile is computed at full grid resolution before decimation, so this
/// only bounds memory and the positivity check, not coherence estimates.
pub const MAX_DENSITY_DIM: usize = 1024;

/// ρ(x, x') on a (possibly decimated) grid, plus the full-resolution
/// antidiagonal coherence profile.
#[derive(Debug, Clone)]
pub struct DensityMatrixSlice {
    /// Row-major n×n matrix, trace-normalized: Σ ρ_ii Δ = 1.
    pub values: Vec<Complex64>,
    pub n: usize,
    /// Spacing of the decimated grid (m).
    pub spacing: f64,
    pub plane: Plane,
    /// |ρ(c + s/2, c - s/2)| / |ρ(c, c)| sampled at s = 0, 2Δ_full, 4Δ_full, …
    pub antidiagonal: Vec<(f64, f64)>,
    /// Full width at half maximum of the antidiagonal profile in the
    /// separation coordinate (m). Window-limited profiles report the widest
    /// measurable separation instead.
    pub fwhm: f64,
    pub fwhm_window_limited: bool,
    /// Intensity centroid the antidiagonal is anchored at (m).
    pub center: f64,
}

/// Ensemble of fields at the laser plane, one per Gauss-Hermite source node.
pub fn before_laser_ensemble(
    cfg: &ExperimentConfig,
    beam_after_loss: &BeamState,
) -> Result<(Vec<WaveField>, Vec<f64>)> {
    let nodes = source_nodes_gh(cfg.source_sigma(), cfg.grid.source_points)?;
    let fields: Result<Vec<WaveField>> = nodes
        .par_iter()
        .map(|&(chi, _)| run_chain_to(cfg, chi, beam_after_loss, Plane::BeforeLaser))
        .collect();
    Ok((fields?, nodes.into_iter().map(|(_, w)| w).collect()))
}

fn check_common_grid(fields: &[WaveField], weights: &[f64]) -> Result<()> {
    if fields.is_empty() || fields.len() != weights.len() {
        return Err(KdError::GridMismatch(format!(
            "need equally many fields and weights, got {} and {}",
            fields.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(KdError::Domain("ensemble weights must be nonnegative".into()));
    }
    let f0 = &fields[0];
    for f in &fields[1..] {
        if f.amplitudes.len() != f0.amplitudes.len()
            || f.spacing != f0.spacing
            || f.origin != f0.origin
        {
            return Err(KdError::GridMismatch(
                "ensemble fields must share one grid".into(),
            ));
        }
    }
    Ok(())
}

/// Antidiagonal coherence profile of the weighted ensemble, anchored at the
/// intensity centroid: returns (center, profile) with the profile holding
/// (separation, normalized |ρ|) pairs.
pub fn antidiagonal_profile(
    fields: &[WaveField],
    weights: &[f64],
) -> Result<(f64, Vec<(f64, f64)>)> {
    check_common_grid(fields, weights)?;
    let f0 = &fields[0];
    let n = f0.amplitudes.len();

    let mut intensity = vec![0.0; n];
    for (f, &w) in fields.iter().zip(weights) {
        for (i, a) in f.amplitudes.iter().enumerate() {
            intensity[i] += w * a.norm_sqr();
        }
    }
    let total: f64 = intensity.iter().sum();
    if total <= 0.0 {
        return Err(KdError::Domain(
            "ensemble carries no intensity; cannot anchor the antidiagonal".into(),
        ));
    }
    let centroid: f64 = intensity
        .iter()
        .enumerate()
        .map(|(i, p)| p * f0.position(i))
        .sum::<f64>()
        / total;
    let c = ((centroid - f0.origin) / f0.spacing).round() as usize;
    let c = c.min(n - 1);

    let j_max = c.min(n - 1 - c);
    let profile: Vec<Complex64> = (0..=j_max)
        .into_par_iter()
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (f, &w) in fields.iter().zip(weights) {
                acc += w * f.amplitudes[c + j] * f.amplitudes[c - j].conj();
            }
            acc
        })
        .collect();
    let peak = profile[0].norm();
    if peak <= 0.0 {
        return Err(KdError::Domain(
            "zero on-axis density; antidiagonal undefined".into(),
        ));
    }
    Ok((
        f0.position(c),
        profile
            .iter()
            .enumerate()
            .map(|(j, v)| (2.0 * j as f64 * f0.spacing, v.norm() / peak))
            .collect(),
    ))
}

/// Build the trace-normalized density matrix of a weighted field ensemble.
///
/// The matrix is decimated to at most `MAX_DENSITY_DIM` per side; the
/// antidiagonal profile and its FWHM are computed at full resolution first.
pub fn density_matrix(fields: &[WaveField], weights: &[f64]) -> Result<DensityMatrixSlice> {
    let (center, antidiagonal) = antidiagonal_profile(fields, weights)?;
    let f0 = &fields[0];
    let n_full = f0.amplitudes.len();

    let stride = n_full.div_ceil(MAX_DENSITY_DIM);
    let idx: Vec<usize> = (0..n_full).step_by(stride).collect();
    let n = idx.len();
    let spacing = f0.spacing * stride as f64;

    let mut values: Vec<Complex64> = (0..n * n)
        .into_par_iter()
        .map(|flat| {
            let (i, j) = (idx[flat / n], idx[flat % n]);
            let mut acc = Complex64::new(0.0, 0.0);
            for (f, &w) in fields.iter().zip(weights) {
                acc += w * f.amplitudes[i] * f.amplitudes[j].conj();
            }
            acc
        })
        .collect();

    let trace: f64 = (0..n).map(|i| values[i * n + i].re).sum::<f64>() * spacing;
    if !(trace > 0.0) {
        return Err(KdError::Domain(format!(
            "density matrix trace must be positive, got {trace}"
        )));
    }
    let inv = 1.0 / trace;
    for v in &mut values {
        *v *= inv;
    }

    // ρ is a weighted sum of outer products, so hermiticity and positivity
    // hold by construction; verify anyway to catch grid or indexing bugs.
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (values[i * n + j] - values[j * n + i].conj()).norm();
            if d > 1e-10 * scale {
                return Err(KdError::Domain(format!(
                    "density matrix not Hermitian: |rho_ij - rho_ji*| = {d:e} at ({i},{j})"
                )));
            }
        }
    }
    let trace_diag: f64 = (0..n).map(|i| values[i * n + i].re).sum();
    if !hermitian_psd(&values, n, 1e-8 * trace_diag) {
        return Err(KdError::Domain(
            "density matrix has an eigenvalue below -1e-8 of its trace".into(),
        ));
    }

    let (fwhm, fwhm_window_limited) = antidiagonal_fwhm_of(&antidiagonal);
    Ok(DensityMatrixSlice {
        values,
        n,
        spacing,
        plane: f0.plane,
        antidiagonal,
        fwhm,
        fwhm_window_limited,
        center,
    })
}

/// FWHM of a normalized antidiagonal profile: twice the first half-crossing
/// separation, linearly interpolated. Profiles that never cross one half
/// within the measurable window report (widest separation, true).
fn antidiagonal_fwhm_of(profile: &[(f64, f64)]) -> (f64, bool) {
    for w in profile.windows(2) {
        let (s0, v0) = w[0];
        let (s1, v1) = w[1];
        if v0 >= 0.5 && v1 < 0.5 {
            let t = (v0 - 0.5) / (v0 - v1);
            return (2.0 * (s0 + t * (s1 - s0)), false);
        }
    }
    (2.0 * profile.last().map(|&(s, _)| s).unwrap_or(0.0), true)
}

impl DensityMatrixSlice {
    /// Normalized antidiagonal magnitude at an arbitrary separation, linear
    /// interpolation between grid samples.
    pub fn antidiagonal_at(&self, separation: f64) -> Result<f64> {
        let s = separation.abs();
        let last = self
            .antidiagonal
            .last()
            .map(|&(x, _)| x)
            .unwrap_or(0.0);
        if s > last {
            return Err(KdError::Domain(format!(
                "separation {s} m beyond the measurable antidiagonal window {last} m"
            )));
        }
        if self.antidiagonal.len() < 2 {
            return Ok(self.antidiagonal[0].1);
        }
        let step = self.antidiagonal[1].0 - self.antidiagonal[0].0;
        let j = ((s / step).floor() as usize).min(self.antidiagonal.len() - 2);
        let (s0, v0) = self.antidiagonal[j];
        let (_, v1) = self.antidiagonal[j + 1];
        let t = (s - s0) / step;
        Ok(v0 + t * (v1 - v0))
    }
}

/// Ratio of coherence magnitudes at a given separation,
/// |ρ_dec(s)| / |ρ_in(s)|, both profiles normalized at s=0. A decohered
/// state gives a ratio below 1; exp(-R_dec) for exposure R_dec. Values at
/// the numerical floor of either profile are refused rather than converted
/// into a meaningless ratio.
pub fn coherence_ratio(
    rho_dec: &DensityMatrixSlice,
    rho_in: &DensityMatrixSlice,
    separation: f64,
) -> Result<f64> {
    let dec = rho_dec.antidiagonal_at(separation)?;
    let inp = rho_in.antidiagonal_at(separation)?;
    if dec < 1e-14 || inp < 1e-14 {
        return Err(KdError::NumericalFloor { separation });
    }
    Ok(dec / inp)
}

/// Coherence length of a state: FWHM of its antidiagonal profile in the
/// separation coordinate. Profiles still above half maximum at the widest
/// measurable separation return that width with the window-limited flag set.
pub fn antidiagonal_fwhm(rho: &DensityMatrixSlice) -> (f64, bool) {
    (rho.fwhm, rho.fwhm_window_limited)
}
