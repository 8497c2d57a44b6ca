//! TOML configuration schema and run identity.
//!
//! Every key carries its unit in the name, and unknown keys are hard errors
//! so a typo cannot silently fall back to a default. A run is identified by
//! the digest of the canonical re-serialization of the parsed file, which
//! makes the output directory insensitive to key order and comments but
//! sensitive to every value.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use kd_core::params::{ExperimentConfig, NumericalGrid};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub beam_energy_ev: f64,
    /// Incoherent source width w1 (1/e² intensity full width).
    pub slit1_width_m: f64,
    pub slit2_width_m: f64,
    pub dist_source_slit2_m: f64,
    pub dist_slit2_plate_m: f64,
    pub plate_length_m: f64,
    /// Beam height above the plate. Omit the key, or set it to `inf`,
    /// to run without a plate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plate_height_m: Option<f64>,
    pub resistivity_ohm_m: f64,
    pub temperature_k: f64,
    pub laser_wavelength_m: f64,
    pub laser_waist_m: f64,
    pub laser_intensity_w_m2: f64,
    pub dist_plate_laser_m: f64,
    pub dist_laser_screen_m: f64,
    pub detection_slit_m: f64,
    #[serde(default)]
    pub grating_offset_m: f64,
    #[serde(default)]
    pub grid: GridSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub window_m: f64,
    pub samples: usize,
    pub source_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_sigma_m: Option<f64>,
}

impl Default for GridSection {
    fn default() -> Self {
        let g = NumericalGrid::default();
        GridSection {
            window_m: g.window,
            samples: g.samples,
            source_points: g.source_points,
            source_sigma_m: g.source_sigma,
        }
    }
}

/// A parsed configuration together with its identity.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub file: ConfigFile,
    /// First 12 hex digits of the canonical digest; names the run directory.
    pub hash: String,
    pub cfg: ExperimentConfig,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let file: ConfigFile = toml::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    from_file(file)
}

/// Validate a parsed file and derive its hash and engine configuration.
pub fn from_file(mut file: ConfigFile) -> Result<Loaded, CliError> {
    // An infinite height means no plate; normalize so `inf` and an absent
    // key canonicalize (and hash) identically.
    if let Some(h) = file.plate_height_m {
        if h.is_infinite() && h > 0.0 {
            file.plate_height_m = None;
        } else if !(h > 0.0) || !h.is_finite() {
            return Err(CliError::Config(format!(
                "plate_height_m must be positive or inf, got {h}"
            )));
        }
    }
    if !file.grid.samples.is_power_of_two() {
        return Err(CliError::Config(format!(
            "grid.samples must be a power of two, got {}",
            file.grid.samples
        )));
    }
    let hash = hash12(&file)?;
    let cfg = to_experiment(&file);
    Ok(Loaded { file, hash, cfg })
}

fn hash12(file: &ConfigFile) -> Result<String, CliError> {
    let canonical = toml::to_string(file)
        .map_err(|e| CliError::Config(format!("cannot canonicalize config: {e}")))?;
    let digest = Sha256::digest(canonical.as_bytes());
    let mut hex = String::with_capacity(12);
    for byte in digest.iter().take(6) {
        hex.push_str(&format!("{byte:02x}"));
    }
    Ok(hex)
}

fn to_experiment(file: &ConfigFile) -> ExperimentConfig {
    ExperimentConfig {
        beam_energy_ev: file.beam_energy_ev,
        slit1_width: file.slit1_width_m,
        slit2_width: file.slit2_width_m,
        dist_source_slit2: file.dist_source_slit2_m,
        dist_slit2_plate: file.dist_slit2_plate_m,
        plate_length: file.plate_length_m,
        plate_height: file.plate_height_m,
        resistivity: file.resistivity_ohm_m,
        temperature: file.temperature_k,
        laser_wavelength: file.laser_wavelength_m,
        laser_waist: file.laser_waist_m,
        laser_intensity: file.laser_intensity_w_m2,
        dist_plate_laser: file.dist_plate_laser_m,
        dist_laser_screen: file.dist_laser_screen_m,
        detection_slit: file.detection_slit_m,
        grating_offset: file.grating_offset_m,
        grid: NumericalGrid {
            window: file.grid.window_m,
            samples: file.grid.samples,
            source_points: file.grid.source_points,
            source_sigma: file.grid.source_sigma_m,
        },
    }
}
