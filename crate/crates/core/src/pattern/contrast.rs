//! Fringe contrast and the thin-grating population oracle.

use num_complex::Complex64;

use crate::bessel::bessel_j;
use crate::error::{KdError, Result};

use super::peaks::{find_peaks, DEFAULT_PROMINENCE};
use super::DiffractionPattern;

/// Default analysis region half-width, in diffraction orders.
pub const DEFAULT_CONTRAST_ORDERS: i32 = 2;

/// Fringe contrast over the central ±`n_outer` orders.
///
/// Two estimators, the larger wins:
///  * valley contrast (max - deepest inter-peak valley)/(max + valley),
///    which tracks resolved combs;
///  * the Fourier amplitude at the order frequency relative to DC,
///    |P̂(1/d)| / P̂(0), which keeps working when peaks merge into a smooth
///    hump and valley detection has nothing to hold on to.
/// Both are bounded to [0, 1].
pub fn contrast(pattern: &DiffractionPattern, n_outer: i32) -> Result<f64> {
    if n_outer < 0 {
        return Err(KdError::Domain(format!(
            "region half-width must be nonnegative, got {n_outer}"
        )));
    }
    let d_hat = pattern.meta.order_spacing;
    let centroid = pattern.centroid();
    let center = find_peaks(pattern, DEFAULT_PROMINENCE)
        .positions
        .iter()
        .cloned()
        .min_by(|a, b| (a - centroid).abs().total_cmp(&(b - centroid).abs()))
        .unwrap_or(centroid);
    let half = (n_outer as f64 + 0.5) * d_hat;
    let lo = center - half;
    let hi = center + half;

    let idx: Vec<usize> = pattern
        .positions
        .iter()
        .enumerate()
        .filter(|(_, &x)| x >= lo && x <= hi)
        .map(|(i, _)| i)
        .collect();
    if idx.len() < 3 {
        return Err(KdError::EmptyRegion(format!(
            "contrast region [{lo:.3e}, {hi:.3e}] m holds {} samples",
            idx.len()
        )));
    }
    let region: Vec<f64> = idx.iter().map(|&i| pattern.density[i]).collect();
    let xs: Vec<f64> = idx.iter().map(|&i| pattern.positions[i]).collect();
    let total: f64 = region.iter().sum();
    if !(total > 0.0) {
        return Err(KdError::EmptyRegion(
            "contrast region carries no intensity".into(),
        ));
    }

    let valley = valley_contrast(pattern, &xs, &region);
    let fourier = fourier_contrast(&xs, &region, d_hat);
    Ok(valley.max(fourier).clamp(0.0, 1.0))
}

/// Michelson-style contrast from resolved peaks: highest in-region peak
/// against the deepest valley lying between adjacent in-region peaks.
fn valley_contrast(pattern: &DiffractionPattern, xs: &[f64], region: &[f64]) -> f64 {
    let peaks = find_peaks(pattern, DEFAULT_PROMINENCE);
    let lo = xs[0];
    let hi = xs[xs.len() - 1];
    let in_region: Vec<(f64, f64)> = peaks
        .positions
        .iter()
        .zip(&peaks.heights)
        .filter(|(&x, _)| x >= lo && x <= hi)
        .map(|(&x, &h)| (x, h))
        .collect();
    if in_region.len() < 2 {
        return 0.0;
    }
    let p_max = in_region.iter().map(|&(_, h)| h).fold(0.0, f64::max);
    let mut v_min = f64::INFINITY;
    for w in in_region.windows(2) {
        let (x0, x1) = (w[0].0, w[1].0);
        let valley = xs
            .iter()
            .zip(region)
            .filter(|(&x, _)| x > x0 && x < x1)
            .map(|(_, &d)| d)
            .fold(f64::INFINITY, f64::min);
        v_min = v_min.min(valley);
    }
    if !v_min.is_finite() || p_max + v_min <= 0.0 {
        return 0.0;
    }
    (p_max - v_min) / (p_max + v_min)
}

/// Single-frequency Fourier visibility |P̂(1/d)| / P̂(0) over the region.
fn fourier_contrast(xs: &[f64], region: &[f64], d_hat: f64) -> f64 {
    let f = 1.0 / d_hat;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut dc = 0.0;
    for (&x, &p) in xs.iter().zip(region) {
        acc += p * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * f * x);
        dc += p;
    }
    if dc <= 0.0 {
        return 0.0;
    }
    acc.norm() / dc
}

/// Thin-grating diffraction populations: the standing wave with modulation
/// amplitude Φ splits the beam into orders at multiples of two photon
/// momenta with populations J_n(Φ)², n = -max..max. Returns orders
/// 0, 1, …, max_order (the populations are symmetric in ±n).
pub fn raman_nath_oracle(phi: f64, max_order: usize) -> Vec<f64> {
    bessel_j(max_order, phi.abs())
        .into_iter()
        .map(|j| j * j)
        .collect()
}
