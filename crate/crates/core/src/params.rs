//! Experiment configuration, beam kinematics, and grid validation.
//!
//! Kinematics are non-relativistic (E = m v²/2): at the 2.5 keV scale the
//! relativistic correction to v is ~0.1%, below every tolerance used here.

use crate::constants::CODATA;
use crate::error::{KdError, Result};

/// Derived kinematic state of the electron beam.
#[derive(Debug, Clone, Copy)]
pub struct BeamState {
    /// Kinetic energy (J).
    pub energy: f64,
    /// Speed (m/s), v = sqrt(2 E / m_e).
    pub velocity: f64,
    /// Momentum (kg m/s), p = m_e v.
    pub momentum: f64,
    /// de Broglie wavelength (m), h / p.
    pub lambda_db: f64,
}

/// Convert electron-volts to joules.
pub fn ev_to_joule(ev: f64) -> f64 {
    ev * CODATA.e
}

/// Convert joules to electron-volts.
pub fn joule_to_ev(j: f64) -> f64 {
    j / CODATA.e
}

/// Build the kinematic state for a beam of the given kinetic energy.
pub fn derive_beam(energy_ev: f64) -> Result<BeamState> {
    if !(energy_ev > 0.0) {
        return Err(KdError::Domain(format!(
            "beam energy must be positive, got {energy_ev} eV"
        )));
    }
    let energy = ev_to_joule(energy_ev);
    let velocity = (2.0 * energy / CODATA.m_e).sqrt();
    let momentum = CODATA.m_e * velocity;
    Ok(BeamState {
        energy,
        velocity,
        momentum,
        lambda_db: CODATA.h / momentum,
    })
}

/// Time of flight over the dissipating plate: length / v.
pub fn flight_time(plate_length: f64, beam: &BeamState) -> f64 {
    plate_length / beam.velocity
}

/// Time to cross the laser interaction region, using the energy-reduced beam
/// that actually arrives there.
pub fn laser_crossing_time(waist: f64, beam_after_loss: &BeamState) -> Result<f64> {
    if !(waist > 0.0) {
        return Err(KdError::Domain(format!(
            "laser waist must be positive, got {waist} m"
        )));
    }
    Ok(waist / beam_after_loss.velocity)
}

/// Numerical discretization of the transverse planes.
#[derive(Debug, Clone, Copy)]
pub struct NumericalGrid {
    /// Transverse window extent per plane (m). Patterns and fields live on
    /// `samples` points spanning [-window/2, window/2).
    pub window: f64,
    /// Points per plane; must be a power of two.
    pub samples: usize,
    /// Gauss-Hermite node count for density-matrix source integration, and a
    /// floor on the node count of the pattern-ensemble rule.
    pub source_points: usize,
    /// Gaussian source standard deviation σ_e (m). `None` derives it from the
    /// incoherent source width as slit1_width / 4 (widths are quoted as 1/e²
    /// intensity full widths).
    pub source_sigma: Option<f64>,
}

impl Default for NumericalGrid {
    fn default() -> Self {
        NumericalGrid {
            window: 64e-6,
            samples: 16_384,
            source_points: 101,
            source_sigma: None,
        }
    }
}

impl NumericalGrid {
    /// Grid spacing (m).
    pub fn spacing(&self) -> f64 {
        self.window / self.samples as f64
    }
}

/// Full description of one simulated run. Lengths in meters, beam energy in
/// eV, intensity in W/m², temperature in K, resistivity in Ω·m.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub beam_energy_ev: f64,
    /// Incoherent source width w1 (1/e² intensity full width).
    pub slit1_width: f64,
    /// Gaussian collimating slit: amplitude transmission exp(-x²/(2 width²)).
    pub slit2_width: f64,
    pub dist_source_slit2: f64,
    pub dist_slit2_plate: f64,
    pub plate_length: f64,
    /// Electron height above the plate surface; `None` means no plate
    /// (then ΔE = 0 and R_dec = 0).
    pub plate_height: Option<f64>,
    pub resistivity: f64,
    pub temperature: f64,
    pub laser_wavelength: f64,
    /// Laser interaction-region width D (m); sets the crossing time.
    pub laser_waist: f64,
    pub laser_intensity: f64,
    pub dist_plate_laser: f64,
    pub dist_laser_screen: f64,
    /// Detection slit width (1/e² intensity full width of the Gaussian
    /// response the pattern is convolved with).
    pub detection_slit: f64,
    /// Transverse offset of the standing-wave antinode from the beam axis.
    pub grating_offset: f64,
    pub grid: NumericalGrid,
}

impl ExperimentConfig {
    /// The reference GaAs-plate geometry used by the shipped configs and the
    /// acceptance suite: 2.5 keV beam, 1 µm collimating slit 24 cm from the
    /// source, 40 µm plate, 532 nm standing wave of 125 µm waist, screen a
    /// further 24 cm downstream, 5 µm detection slit, 144 Ω·m at 300 K.
    pub fn benchmark(plate_height: Option<f64>, slit1_width: f64, laser_intensity: f64) -> Self {
        ExperimentConfig {
            beam_energy_ev: 2500.0,
            slit1_width,
            slit2_width: 1e-6,
            dist_source_slit2: 0.24,
            dist_slit2_plate: 1e-3,
            plate_length: 40e-6,
            plate_height,
            resistivity: 144.0,
            temperature: 300.0,
            laser_wavelength: 532e-9,
            laser_waist: 125e-6,
            laser_intensity,
            dist_plate_laser: 1e-2,
            dist_laser_screen: 0.24,
            detection_slit: 5e-6,
            grating_offset: 0.0,
            grid: NumericalGrid::default(),
        }
    }

    /// Effective Gaussian source standard deviation σ_e.
    pub fn source_sigma(&self) -> f64 {
        self.grid.source_sigma.unwrap_or(self.slit1_width / 4.0)
    }

    /// Gaussian σ of the detection response.
    pub fn detection_sigma(&self) -> f64 {
        self.detection_slit / 4.0
    }

    /// Free-flight distance between the collimating slit and the laser plane
    /// (the plate region propagates freely; its effect enters through the
    /// beam energy and the calibrated source width).
    pub fn slit_to_laser(&self) -> f64 {
        self.dist_slit2_plate + self.plate_length + self.dist_plate_laser
    }

    /// Half-range of source points any quadrature rule may request. The
    /// uniform pattern rule truncates at 5σ_e; Gauss-Hermite nodes surviving
    /// the weight cutoff reach about 7.2σ_e, so budget 7.5σ_e.
    pub fn source_half_range(&self) -> f64 {
        7.5 * self.source_sigma()
    }

    /// Window of the source plane. The source plane only carries point
    /// sources, so it may be wider than the working window; it must contain
    /// the whole quadrature range.
    pub fn source_window(&self) -> f64 {
        self.grid.window.max(2.0 * self.source_half_range())
    }

    /// Reject configurations that are unphysical or numerically
    /// untrustworthy on the configured grid. Fail-fast: nothing downstream
    /// re-checks these.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("beam_energy_ev", self.beam_energy_ev),
            ("slit2_width", self.slit2_width),
            ("dist_source_slit2", self.dist_source_slit2),
            ("resistivity", self.resistivity),
            ("temperature", self.temperature),
            ("laser_wavelength", self.laser_wavelength),
            ("laser_waist", self.laser_waist),
            ("dist_laser_screen", self.dist_laser_screen),
            ("grid.window", self.grid.window),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(KdError::Domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        let nonnegative = [
            ("slit1_width", self.slit1_width),
            ("dist_slit2_plate", self.dist_slit2_plate),
            ("plate_length", self.plate_length),
            ("laser_intensity", self.laser_intensity),
            ("dist_plate_laser", self.dist_plate_laser),
            ("detection_slit", self.detection_slit),
        ];
        for (name, v) in nonnegative {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(KdError::Domain(format!(
                    "{name} must be nonnegative and finite, got {v}"
                )));
            }
        }
        if let Some(h) = self.plate_height {
            if !(h > 0.0) {
                return Err(KdError::Domain(format!(
                    "plate_height must be positive when present, got {h}"
                )));
            }
        }
        if !self.grid.samples.is_power_of_two() || self.grid.samples < 64 {
            return Err(KdError::Domain(format!(
                "grid.samples must be a power of two >= 64, got {}",
                self.grid.samples
            )));
        }
        if self.grid.source_points == 0 {
            return Err(KdError::Domain(
                "grid.source_points must be at least 1".into(),
            ));
        }
        if let Some(s) = self.grid.source_sigma {
            if !(s >= 0.0) || !s.is_finite() {
                return Err(KdError::Domain(format!(
                    "grid.source_sigma must be nonnegative, got {s}"
                )));
            }
        }
        self.validate_sampling()
    }

    /// Per-leg sampling criteria.
    ///
    /// Legs that sample a quadratic (or exact square-root) phase chirp in
    /// real space need the chirp Nyquist bound
    ///     spacing ≤ λ ℓ / (2 W_eff),
    /// where W_eff is the widest transverse offset the chirp is evaluated
    /// over. That covers the source→slit leg (exact kernel, offsets up to
    /// window/2 + 5σ_e) and the laser→screen leg (grid-rescaling Fresnel
    /// transform, offsets up to the window).
    ///
    /// The short slit→laser leg uses the transfer-function form instead (its
    /// chirp lives in frequency space), which requires the frequency-domain
    /// chirp to be Nyquist-sampled over the band the beam occupies:
    ///     λ ℓ ν_occ ≤ W / 2,
    /// with ν_occ bounded by the source-tilt and slit-confinement
    /// frequencies. Finally the post-grating field must fit the grid band:
    ///     ν_grating + ν_occ ≤ 1 / (2 spacing).
    fn validate_sampling(&self) -> Result<()> {
        let beam = derive_beam(self.beam_energy_ev)?;
        // The chain runs at the energy-reduced wavelength, which is longer;
        // bounds are evaluated at the full-energy (shortest) wavelength so
        // they hold for every legal energy loss.
        let lambda = beam.lambda_db;
        let w = self.grid.window;
        let dx = self.grid.spacing();
        let chi_max = self.source_half_range();

        // Leg 1: source → collimating slit, exact kernel. The output-side
        // phase gradient peaks at offset window/2 + chi_max.
        let l1 = self.dist_source_slit2;
        let limit1 = lambda * l1 / (w + 2.0 * chi_max);
        check_spacing("source->slit2", dx, limit1, w)?;

        // Leg 2: slit → laser, transfer function. Occupied band: geometric
        // tilt of the widest source point plus the slit diffraction band.
        let l2 = self.slit_to_laser();
        if l2 > 0.0 {
            let nu_occ = chi_max / (l1 * lambda) + 4.0 / (2.0 * std::f64::consts::PI * self.slit2_width);
            let max_band = 0.5 * w / (lambda * l2);
            if nu_occ > max_band {
                let required = (self.grid.samples as f64 * nu_occ / max_band).ceil() as usize;
                return Err(KdError::Sampling {
                    leg: "slit2->laser (transfer function)",
                    spacing: dx,
                    limit: dx * max_band / nu_occ,
                    required_samples: required.next_power_of_two(),
                });
            }
        }

        // Laser phase bandwidth: d/dx [2Φ cos(2 k_l x)] peaks at 4πΦ/λ_l.
        // Φ depends on the crossing time of the beam that actually arrives,
        // so evaluate the wall model here; it also vets the energy loss.
        let report = crate::zurek::build_report(self, crate::zurek::DEFAULT_DELTA_X_REF)?;
        let reduced = derive_beam(self.beam_energy_ev - joule_to_ev(report.delta_e))?;
        let v0 = crate::wave::ponderomotive_depth(self.laser_intensity, self.laser_wavelength);
        let t_ell = self.laser_waist / reduced.velocity;
        let phi = v0 * t_ell / (2.0 * CODATA.hbar);
        let nu_grating = 2.0 * phi / self.laser_wavelength;
        let nu_tilt = chi_max / (l1 * lambda);
        let nyquist = 0.5 / dx;
        if nu_grating + nu_tilt > nyquist {
            let required =
                (2.0 * (nu_grating + nu_tilt) * w).ceil() as usize;
            return Err(KdError::Sampling {
                leg: "laser phase imprint",
                spacing: dx,
                limit: 0.5 / (nu_grating + nu_tilt),
                required_samples: required.next_power_of_two(),
            });
        }

        // Leg 3: laser → screen, grid-rescaling Fresnel transform; the
        // real-space pre-chirp must be Nyquist-sampled across the window.
        let l3 = self.dist_laser_screen;
        let limit3 = lambda * l3 / (2.0 * w);
        check_spacing("laser->screen", dx, limit3, w)?;

        Ok(())
    }
}

fn check_spacing(leg: &'static str, dx: f64, limit: f64, window: f64) -> Result<()> {
    if dx > limit {
        let required = (window / limit).ceil() as usize;
        Err(KdError::Sampling {
            leg,
            spacing: dx,
            limit,
            required_samples: required.next_power_of_two(),
        })
    } else {
        Ok(())
    }
}
