//! Built-in numerical self-checks, runnable from the CLI.
//!
//! Each check exercises one load-bearing numerical claim end to end and
//! reports pass/fail with the measured numbers. The helpers are public so
//! the integration suite can apply its own tolerances to the same
//! computations.

use num_complex::Complex64;

use crate::bessel::bessel_j;
use crate::error::Result;
use crate::params::derive_beam;
use crate::pattern::raman_nath_oracle;
use crate::quad::gauss_hermite;
use crate::wave::{apply_laser_phase, propagate, LaserGrating, Method, Plane, WaveField};
use crate::zurek::{
    coherence_length, decoherence_amount, derive_wall, energy_loss, DEFAULT_DELTA_X_REF,
};

/// Outcome of one self-check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    match body() {
        Ok((pass, detail)) => CheckResult { name, pass, detail },
        Err(e) => CheckResult {
            name,
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Gaussian test field with amplitude e^{-x²/w0²} on a centered grid.
fn gaussian_field(w0: f64, samples: usize, window: f64, lambda: f64) -> WaveField {
    let spacing = window / samples as f64;
    let origin = -window / 2.0;
    let amplitudes = (0..samples)
        .map(|i| {
            let x = origin + i as f64 * spacing;
            Complex64::new((-x * x / (w0 * w0)).exp(), 0.0)
        })
        .collect();
    WaveField {
        amplitudes,
        spacing,
        origin,
        plane: Plane::Slit2,
        lambda_db: lambda,
    }
}

/// Modulation amplitude of the reference thin-grating check: the standing
/// wave at 1e14 W/m² and 532 nm crossed in a fixed 4.2 ps.
pub fn reference_phase_amplitude() -> f64 {
    let v0 = crate::wave::ponderomotive_depth(1e14, 532e-9);
    v0 * 4.2e-12 / (2.0 * crate::constants::CODATA.hbar)
}

/// Far-field populations of a thin standing-wave grating, binned per
/// diffraction order, against the J_n²(Φ) oracle. Returns
/// (order, measured, expected) triples for n = -max_order..=max_order.
pub fn raman_nath_populations(
    phi: f64,
    samples: usize,
    max_order: i32,
) -> Result<Vec<(i32, f64, f64)>> {
    let beam = derive_beam(2500.0)?;
    let window = 64e-6;
    let lambda_laser = 532e-9;
    // Apodization narrow enough that the window truncates nothing, wide
    // enough that each far-field order is far narrower than its bin.
    let sigma = 3e-6;
    let field = gaussian_field(sigma * std::f64::consts::SQRT_2, samples, window, beam.lambda_db);

    let grating = LaserGrating {
        v0: 0.0,
        k_laser: 2.0 * std::f64::consts::PI / lambda_laser,
        t_ell: 0.0,
        phase_amplitude: phi,
        offset: 0.0,
    };
    let modulated = apply_laser_phase(&field, &grating);
    let screen = propagate(&modulated, 0.24, Method::Fresnel)?;

    let d_hat = beam.lambda_db * 0.24 / (lambda_laser / 2.0);
    let total: f64 = screen.amplitudes.iter().map(|a| a.norm_sqr()).sum();
    let oracle = raman_nath_oracle(phi, max_order as usize);
    let mut out = Vec::new();
    for n in -max_order..=max_order {
        let lo = (n as f64 - 0.5) * d_hat;
        let hi = (n as f64 + 0.5) * d_hat;
        let bin: f64 = screen
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let u = screen.position(*i);
                u >= lo && u < hi
            })
            .map(|(_, a)| a.norm_sqr())
            .sum();
        out.push((n, bin / total, oracle[n.unsigned_abs() as usize]));
    }
    Ok(out)
}

/// Free-space Gaussian beam spread: measured second-moment waist after
/// 0.24 m against w0 sqrt(1 + (λL/(π w0²))²). Returns (measured, expected).
pub fn gaussian_waist_spread(samples: usize) -> Result<(f64, f64)> {
    let beam = derive_beam(2500.0)?;
    let w0 = 2e-6;
    let dist = 0.24;
    let field = gaussian_field(w0, samples, 64e-6, beam.lambda_db);
    let far = propagate(&field, dist, Method::Fresnel)?;

    let mut total = 0.0;
    let mut mean = 0.0;
    for (i, a) in far.amplitudes.iter().enumerate() {
        let p = a.norm_sqr();
        total += p;
        mean += p * far.position(i);
    }
    mean /= total;
    let mut var = 0.0;
    for (i, a) in far.amplitudes.iter().enumerate() {
        let d = far.position(i) - mean;
        var += a.norm_sqr() * d * d;
    }
    var /= total;
    let measured = 2.0 * var.sqrt();
    let rayleigh = std::f64::consts::PI * w0 * w0 / beam.lambda_db;
    let expected = w0 * (1.0 + (dist / rayleigh).powi(2)).sqrt();
    Ok((measured, expected))
}

/// Relative L2 distance between unit-normalized intensities of the exact
/// kernel and the paraxial propagator on the same test field.
pub fn method_equivalence_distance(samples: usize) -> Result<f64> {
    let beam = derive_beam(2500.0)?;
    let field = gaussian_field(2e-6, samples, 64e-6, beam.lambda_db);
    let dist = 0.24;
    let a = propagate(&field, dist, Method::Exact)?;
    let b = propagate(&field, dist, Method::Fresnel)?;
    if a.amplitudes.len() != b.amplitudes.len() || (a.spacing - b.spacing).abs() > 1e-18 {
        return Err(crate::error::KdError::GridMismatch(format!(
            "methods returned different grids: {} @ {:.3e} vs {} @ {:.3e}",
            a.amplitudes.len(),
            a.spacing,
            b.amplitudes.len(),
            b.spacing
        )));
    }
    let ia: Vec<f64> = a.amplitudes.iter().map(|v| v.norm_sqr()).collect();
    let ib: Vec<f64> = b.amplitudes.iter().map(|v| v.norm_sqr()).collect();
    let na = ia.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = ib.iter().map(|x| x * x).sum::<f64>().sqrt();
    let diff = ia
        .iter()
        .zip(&ib)
        .map(|(x, y)| {
            let d = x / na - y / nb;
            d * d
        })
        .sum::<f64>()
        .sqrt();
    Ok(diff)
}

/// Run every self-check. `samples_override` substitutes the grid size of the
/// wave-based checks (the normal way to watch the sampling guards trip).
pub fn run_verify(samples_override: Option<usize>) -> Vec<CheckResult> {
    let samples = samples_override.unwrap_or(16_384);
    let mut results = Vec::new();

    results.push(check("bessel-sum-rule", || {
        let mut worst = 0.0_f64;
        for &x in &[0.5, 0.84313597, 2.0, 15.231235916] {
            let j = bessel_j((40.0 + 2.0 * x) as usize, x);
            let total = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
            worst = worst.max((total - 1.0).abs());
        }
        Ok((worst < 1e-10, format!("worst |Σ J_n² - 1| = {worst:.3e}")))
    }));

    results.push(check("hermite-quadrature", || {
        let (nodes, weights) = gauss_hermite(40)?;
        let got: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&x, &w)| w * (3.7 * x).cos())
            .sum();
        // ∫ cos(at) e^{-t²} dt = sqrt(π) e^{-a²/4}
        let expect = std::f64::consts::PI.sqrt() * (-3.7_f64 * 3.7 / 4.0).exp();
        let err = (got - expect).abs() / expect.abs();
        Ok((err < 1e-12, format!("oscillatory integral off by {err:.3e}")))
    }));

    results.push(check("wall-model-scaling", || {
        let beam = derive_beam(2500.0)?;
        let wall2 = derive_wall(2e-6, 144.0, 300.0, 40e-6, &beam);
        let wall1 = derive_wall(1e-6, 144.0, 300.0, 40e-6, &beam);
        let r2 = decoherence_amount(&wall2, DEFAULT_DELTA_X_REF)?;
        let r1 = decoherence_amount(&wall1, DEFAULT_DELTA_X_REF)?;
        let ratio_r = r1 / r2;
        let (e2, _) = energy_loss(&wall2, beam.velocity, beam.energy)?;
        let (e1, _) = energy_loss(&wall1, beam.velocity, beam.energy)?;
        let ratio_e = e1 / e2;
        // x_coh self-consistency: exposure at the one-bit separation is ln 2.
        let xc = coherence_length(&wall1)?;
        let bit = decoherence_amount(&wall1, xc)?;
        let ok = (ratio_r - 32.0).abs() < 1e-9
            && (ratio_e - 8.0).abs() < 1e-9
            && (bit - std::f64::consts::LN_2).abs() < 1e-10;
        Ok((
            ok,
            format!(
                "R ratio {ratio_r:.12} (want 32), ΔE ratio {ratio_e:.12} (want 8), \
                 exposure at x_coh {bit:.12} (want ln 2)"
            ),
        ))
    }));

    results.push(check("raman-nath-bins", || {
        // The reference thin-grating working point: 1e14 W/m² at 532 nm
        // crossed in 4.2 ps gives a modulation amplitude near 0.84.
        let phi = reference_phase_amplitude();
        let pops = raman_nath_populations(phi, samples, 3)?;
        let mut worst = 0.0_f64;
        for &(_, got, want) in &pops {
            worst = worst.max((got - want).abs());
        }
        let j = bessel_j(60, phi);
        let total = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
        let sum_err = (total - 1.0).abs();
        Ok((
            worst < 0.01 && sum_err < 1e-10,
            format!(
                "Φ = {phi:.6}, max per-order error {worst:.3e} (limit 1e-2), \
                 sum rule off {sum_err:.3e}"
            ),
        ))
    }));

    results.push(check("gaussian-waist", || {
        let (got, want) = gaussian_waist_spread(samples)?;
        let err = (got - want).abs() / want;
        Ok((
            err < 0.005,
            format!("waist {got:.6e} m vs {want:.6e} m, off {err:.3e}"),
        ))
    }));

    results.push(check("method-equivalence", || {
        let dist = method_equivalence_distance(samples)?;
        Ok((
            dist < 1e-3,
            format!("intensity L2 distance {dist:.3e} (limit 1e-3)"),
        ))
    }));

    results
}
