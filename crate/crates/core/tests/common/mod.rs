//! Helpers shared by the integration suites.
#![allow(dead_code)]

use kd_core::params::{derive_beam, joule_to_ev, BeamState, ExperimentConfig};
use kd_core::pattern::{DiffractionPattern, PatternMeta};
use kd_core::zurek::{build_report, DEFAULT_DELTA_X_REF};

/// Beam after the configured plate pass, at the actually dissipated energy.
pub fn reduced_beam(cfg: &ExperimentConfig) -> BeamState {
    let report = build_report(cfg, DEFAULT_DELTA_X_REF).unwrap();
    derive_beam(cfg.beam_energy_ev - joule_to_ev(report.delta_e)).unwrap()
}

/// Synthetic pattern: `2 n + 1` Gaussian peaks at multiples of `spacing`,
/// the whole comb stretched by `stretch`, symmetric window with margins.
pub fn gaussian_comb(spacing: f64, n: i32, stretch: f64) -> DiffractionPattern {
    let sigma = spacing / 12.0;
    let half = (n as f64 * stretch + 0.6) * spacing;
    let m = 4096;
    let dx = 2.0 * half / m as f64;
    let positions: Vec<f64> = (0..m).map(|i| -half + i as f64 * dx).collect();
    let density: Vec<f64> = positions
        .iter()
        .map(|&x| {
            let mut v = 0.0;
            for k in -n..=n {
                let c = k as f64 * spacing * stretch;
                let d = (x - c) / sigma;
                v += (1.0 / (1.0 + 0.05 * k.abs() as f64)) * (-0.5 * d * d).exp();
            }
            v
        })
        .collect();
    let mut p = DiffractionPattern {
        positions,
        density,
        meta: PatternMeta {
            intensity: 0.0,
            h_p: None,
            w1: 0.0,
            delta_e_ev: 0.0,
            lambda_db: 2.45e-11,
            order_spacing: spacing,
        },
    };
    let area = p.area();
    for d in &mut p.density {
        *d /= area;
    }
    p
}

/// Sum of |ψ|² Δ over the bin [(n-1/2) d, (n+1/2) d) of a screen field.
pub fn order_population(field: &kd_core::wave::WaveField, d_hat: f64, n: i32) -> f64 {
    let lo = (n as f64 - 0.5) * d_hat;
    let hi = (n as f64 + 0.5) * d_hat;
    field
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let u = field.position(*i);
            u >= lo && u < hi
        })
        .map(|(_, a)| a.norm_sqr() * field.spacing)
        .sum()
}
