//! Error type shared across the simulator.

/// Errors produced by configuration validation, propagation, and analysis.
#[derive(Debug, thiserror::Error)]
pub enum KdError {
    /// A scalar argument violated its stated domain (non-positive energy,
    /// out-of-window source point, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Dissipative energy loss reached or exceeded the beam kinetic energy;
    /// the run is physically invalid.
    #[error("invalid run: energy loss {delta_e_ev:.1} eV >= kinetic energy {e_kin_ev:.1} eV")]
    EnergyLossExceedsKinetic { delta_e_ev: f64, e_kin_ev: f64 },

    /// A propagation leg would be numerically untrustworthy on the configured
    /// grid. `required_samples` is the minimum count (at the current window)
    /// that satisfies the violated bound.
    #[error(
        "sampling criterion violated on {leg}: grid spacing {spacing:.3e} m exceeds \
         the limit {limit:.3e} m; at least {required_samples} samples are needed \
         over the current window"
    )]
    Sampling {
        leg: &'static str,
        spacing: f64,
        limit: f64,
        required_samples: usize,
    },

    /// Two fields or patterns that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A peak-set operation asked for a diffraction order that was not found.
    #[error("order {order} missing in the {which} peak set")]
    OrderMissing { order: i32, which: &'static str },

    /// Source-width calibration cannot reach the requested decoherence amount
    /// within the legal width bracket.
    #[error(
        "calibration target R = {target:.4} unreachable: achievable R spans \
         [{achieved_lo:.4}, {achieved_hi:.4}] for source widths in \
         [{width_lo:.3e}, {width_hi:.3e}] m"
    )]
    Unreachable {
        target: f64,
        achieved_lo: f64,
        achieved_hi: f64,
        width_lo: f64,
        width_hi: f64,
    },

    /// The baseline density matrix is numerically negligible at the requested
    /// separation, so a coherence ratio there is meaningless.
    #[error("baseline coherence below numerical floor at separation {separation:.3e} m")]
    NumericalFloor { separation: f64 },

    /// A requested analysis region contained no samples.
    #[error("empty analysis region: {0}")]
    EmptyRegion(String),

    /// Wraps an error with the chain stage it occurred in.
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<KdError>,
    },
}

impl KdError {
    /// Attach a chain-stage label, preserving the underlying error.
    pub fn at_stage(self, stage: &'static str) -> Self {
        KdError::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, KdError>;
