//! Detection-plane observables: patterns, peaks, contrast, shifts.

mod build;
mod contrast;
mod peaks;

pub use build::{detection_convolve, incoherent_sum, simulate_pattern};
pub use contrast::{contrast, raman_nath_oracle, DEFAULT_CONTRAST_ORDERS};
pub use peaks::{find_peaks, order_shift_or_outermost, peak_shift, PeakSet, DEFAULT_PROMINENCE};

/// Provenance of one simulated pattern.
#[derive(Debug, Clone, Copy)]
pub struct PatternMeta {
    /// Laser peak intensity (W/m²).
    pub intensity: f64,
    /// Plate height, if a plate was present (m).
    pub h_p: Option<f64>,
    /// Incoherent source width used (m).
    pub w1: f64,
    /// Beam energy lost over the plate (eV).
    pub delta_e_ev: f64,
    /// de Broglie wavelength the chain actually ran at (m).
    pub lambda_db: f64,
    /// Expected spacing of diffraction orders at the screen:
    /// λ_dB · L_screen / (λ_laser / 2).
    pub order_spacing: f64,
}

/// Detected probability density over screen position, unit area.
#[derive(Debug, Clone)]
pub struct DiffractionPattern {
    pub positions: Vec<f64>,
    pub density: Vec<f64>,
    pub meta: PatternMeta,
}

impl DiffractionPattern {
    pub fn spacing(&self) -> f64 {
        if self.positions.len() < 2 {
            return 0.0;
        }
        self.positions[1] - self.positions[0]
    }

    /// Total integrated probability (should be 1 after normalization).
    pub fn area(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.spacing()
    }

    /// Intensity centroid (m).
    pub fn centroid(&self) -> f64 {
        let total: f64 = self.density.iter().sum();
        if total <= 0.0 {
            return 0.0;
        }
        self.density
            .iter()
            .zip(&self.positions)
            .map(|(d, x)| d * x)
            .sum::<f64>()
            / total
    }
}
