//! Kapitza-Dirac electron diffraction under linked decoherence and
//! dissipation from a resistive wall.
//!
//! The pipeline: an incoherent electron source is collimated by a Gaussian
//! slit, skims a resistive plate (losing energy and transverse coherence),
//! crosses a standing-wave light grating, and lands on a detection screen.
//! `zurek` quantifies what the plate does, `wave` propagates single source
//! points through the optics, `coherence` and `pattern` turn field ensembles
//! into the measurable quantities, and `verify` self-checks the numerics.

pub mod bessel;
pub mod coherence;
pub mod constants;
pub mod error;
pub mod linalg;
pub mod params;
pub mod pattern;
pub mod quad;
pub mod verify;
pub mod wave;
pub mod zurek;

pub use error::{KdError, Result};
pub use params::{derive_beam, BeamState, ExperimentConfig, NumericalGrid};
pub use pattern::{simulate_pattern, DiffractionPattern};
pub use zurek::{build_report, DecoherenceReport, DEFAULT_DELTA_X_REF};
