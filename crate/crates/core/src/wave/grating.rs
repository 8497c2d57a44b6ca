//! Thin-phase imprint of the standing-wave light grating.

use num_complex::Complex64;

use crate::constants::CODATA;
use crate::error::{KdError, Result};
use crate::wave::field::{Plane, WaveField};

/// Standing-wave phase grating in the thin (Raman-Nath) regime.
#[derive(Debug, Clone, Copy)]
pub struct LaserGrating {
    /// Ponderomotive well depth V0 (J).
    pub v0: f64,
    /// Optical wavenumber 2π/λ_laser (1/m); the intensity fringes have
    /// period λ_laser/2.
    pub k_laser: f64,
    /// Crossing time of the interaction region (s).
    pub t_ell: f64,
    /// Modulation amplitude Φ = V0 t_ℓ / (2ħ): the accumulated phase is
    /// -2Φ cos²(k_l x) = -Φ(1 + cos 2k_l x).
    pub phase_amplitude: f64,
    /// Transverse offset of the antinode from the beam axis (m).
    pub offset: f64,
}

impl LaserGrating {
    pub fn new(v0: f64, laser_wavelength: f64, t_ell: f64, offset: f64) -> Result<Self> {
        if !(v0 >= 0.0) || !(laser_wavelength > 0.0) || !(t_ell > 0.0) {
            return Err(KdError::Domain(format!(
                "grating needs v0 >= 0, wavelength > 0, crossing time > 0; \
                 got v0={v0} lambda={laser_wavelength} t={t_ell}"
            )));
        }
        Ok(LaserGrating {
            v0,
            k_laser: 2.0 * std::f64::consts::PI / laser_wavelength,
            t_ell,
            phase_amplitude: v0 * t_ell / (2.0 * CODATA.hbar),
            offset,
        })
    }
}

/// Ponderomotive potential depth of a standing wave of peak intensity I:
/// V0 = e² I / (2 m_e ε₀ c ω²), ω = 2πc/λ.
pub fn ponderomotive_depth(intensity: f64, lambda_laser: f64) -> f64 {
    let c = CODATA;
    let omega = 2.0 * std::f64::consts::PI * c.c / lambda_laser;
    c.e * c.e * intensity / (2.0 * c.m_e * c.eps0 * c.c * omega * omega)
}

/// Multiply by the grating phase e^{-i 2Φ cos²(k_l (x - offset))}.
pub fn apply_laser_phase(field: &WaveField, grating: &LaserGrating) -> WaveField {
    let mut out = field.clone();
    let two_phi = 2.0 * grating.phase_amplitude;
    for (i, a) in out.amplitudes.iter_mut().enumerate() {
        let x = field.origin + i as f64 * field.spacing;
        let c = (grating.k_laser * (x - grating.offset)).cos();
        *a *= Complex64::from_polar(1.0, -two_phi * c * c);
    }
    out.plane = Plane::AfterLaser;
    out
}
