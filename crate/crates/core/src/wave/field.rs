//! Sampled complex field on a uniform transverse grid.

use num_complex::Complex64;

use crate::error::{KdError, Result};

/// Which beamline plane a field lives on. Purely diagnostic; the numerics
/// never branch on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    Source,
    Slit2,
    BeforeLaser,
    AfterLaser,
    Screen,
}

/// Complex amplitude samples at positions origin + i·spacing.
#[derive(Debug, Clone)]
pub struct WaveField {
    pub amplitudes: Vec<Complex64>,
    pub spacing: f64,
    pub origin: f64,
    pub plane: Plane,
    /// de Broglie wavelength the field propagates at (m).
    pub lambda_db: f64,
}

impl WaveField {
    /// Position of sample i.
    pub fn position(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    /// L2 norm with the measure: sqrt(Σ |a|² Δ). Unitary propagation
    /// preserves this exactly.
    pub fn norm_l2(&self) -> f64 {
        (self
            .amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            * self.spacing)
            .sqrt()
    }

    /// |ψ|² at every sample.
    pub fn intensity(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Monochromatic point emitter at transverse offset `chi`: a discrete delta
/// (amplitude 1/Δ, so ∫|ψ|²dx = 1/Δ and the norm is χ-independent) placed at
/// the nearest grid node of a window centered on the axis.
pub fn point_source(chi: f64, n_samples: usize, window: f64, lambda: f64) -> Result<WaveField> {
    if n_samples < 2 || !(window > 0.0) || !(lambda > 0.0) {
        return Err(KdError::Domain(format!(
            "point_source needs n >= 2, window > 0, lambda > 0; got n={n_samples} window={window} lambda={lambda}"
        )));
    }
    if chi.abs() >= window / 2.0 {
        return Err(KdError::Domain(format!(
            "source offset {chi} m outside the source window ±{} m",
            window / 2.0
        )));
    }
    let spacing = window / n_samples as f64;
    let origin = -window / 2.0;
    let idx = ((chi - origin) / spacing).round() as usize;
    let idx = idx.min(n_samples - 1);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_samples];
    amplitudes[idx] = Complex64::new(1.0 / spacing, 0.0);
    Ok(WaveField {
        amplitudes,
        spacing,
        origin,
        plane: Plane::Source,
        lambda_db: lambda,
    })
}

/// Gaussian amplitude mask exp(-x²/(2 width²)) centered on the axis.
pub fn apply_gaussian_slit(field: &WaveField, width: f64) -> Result<WaveField> {
    if !(width > 0.0) {
        return Err(KdError::Domain(format!(
            "slit width must be positive, got {width} m"
        )));
    }
    let mut out = field.clone();
    let inv = 1.0 / (2.0 * width * width);
    for (i, a) in out.amplitudes.iter_mut().enumerate() {
        let x = field.origin + i as f64 * field.spacing;
        *a *= (-x * x * inv).exp();
    }
    out.plane = Plane::Slit2;
    Ok(out)
}
