//! One-dimensional scalar wave propagation through the beamline.

mod chain;
mod field;
mod grating;
mod propagate;

pub use chain::{run_chain, run_chain_to};
pub use field::{apply_gaussian_slit, point_source, Plane, WaveField};
pub use grating::{apply_laser_phase, ponderomotive_depth, LaserGrating};
pub use propagate::{exact_to_grid, propagate, Method};
