//! Transverse coherence diagnostics at the laser plane.

mod calibrate;
mod density;

pub use calibrate::{calibrate_source_width, DEFAULT_SEPARATION_REF};
pub use density::{
    antidiagonal_fwhm, antidiagonal_profile, before_laser_ensemble, coherence_ratio,
    density_matrix, DensityMatrixSlice, MAX_DENSITY_DIM,
};
