//! Free-space propagators.
//!
//! Three numerical forms, one physical operation:
//!  * `Exact`: direct summation of the outgoing cylindrical-wave kernel
//!    e^{ikr}/sqrt(iλr), r = sqrt((x-y)² + ℓ²). O(N·M) but makes no paraxial
//!    approximation; used for the long source leg and as the reference the
//!    Fresnel forms are validated against.
//!  * Fresnel transfer-function: FFT, multiply by e^{ikℓ}e^{-iπλℓf²},
//!    inverse FFT. Grid-preserving; right for short hops where the Fresnel
//!    number is large.
//!  * Fresnel rescaling (single-FFT) form: chirp, FFT, chirp, with output
//!    spacing λℓ/(N Δ). Right for long hops where the pattern outgrows the
//!    input window.
//!
//! `Method::Fresnel` picks between the two Fresnel forms from the occupied
//! support and bandwidth of the concrete input field, so callers state
//! physics (paraxial or not), not numerics. All three forms are exactly
//! unitary on the grid: `run_chain` relies on that instead of renormalizing,
//! which keeps the pipeline linear in the input amplitude.

use std::cell::RefCell;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{KdError, Result};
use crate::wave::field::WaveField;

/// Propagation algorithm family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Direct kernel summation, no paraxial approximation.
    Exact,
    /// Paraxial propagation; the concrete form is chosen per call.
    Fresnel,
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn fft_in_place(buf: &mut [Complex64], forward: bool) {
    PLANNER.with(|p| {
        let mut planner = p.borrow_mut();
        let fft = if forward {
            planner.plan_fft_forward(buf.len())
        } else {
            planner.plan_fft_inverse(buf.len())
        };
        fft.process(buf);
    });
    if !forward {
        let scale = 1.0 / buf.len() as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}

/// Swap halves so index N/2 moves to 0 (even N only; grids are power-of-two).
fn half_swap(buf: &mut [Complex64]) {
    let n = buf.len();
    debug_assert_eq!(n % 2, 0);
    let (a, b) = buf.split_at_mut(n / 2);
    a.swap_with_slice(b);
}

/// Index range [lo, hi] of samples above `rel` of the peak magnitude.
fn occupied_range(values: &[Complex64], rel: f64) -> Option<(usize, usize)> {
    let max = values.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max);
    if max <= 0.0 {
        return None;
    }
    let thresh = rel * max;
    let lo = values.iter().position(|a| a.norm_sqr() > thresh)?;
    let hi = values.iter().rposition(|a| a.norm_sqr() > thresh)?;
    Some((lo, hi))
}

/// Propagate a field over `distance`.
pub fn propagate(field: &WaveField, distance: f64, method: Method) -> Result<WaveField> {
    if distance < 0.0 || !distance.is_finite() {
        return Err(KdError::Domain(format!(
            "propagation distance must be nonnegative and finite, got {distance} m"
        )));
    }
    if distance == 0.0 {
        return Ok(field.clone());
    }
    match method {
        Method::Exact => exact_to_grid(
            field,
            distance,
            field.spacing,
            field.origin,
            field.amplitudes.len(),
        ),
        Method::Fresnel => fresnel_auto(field, distance),
    }
}

/// Direct kernel summation onto an arbitrary output grid.
///
/// Zero-amplitude input samples contribute nothing and are skipped, so a
/// point source costs O(M), not O(N·M). The kernel phase must be resolved on
/// the output grid: the largest transverse offset between a live input
/// sample and an output sample is limited to λℓ/(2Δ_out).
pub fn exact_to_grid(
    field: &WaveField,
    distance: f64,
    out_spacing: f64,
    out_origin: f64,
    out_len: usize,
) -> Result<WaveField> {
    if !(distance > 0.0) {
        return Err(KdError::Domain(format!(
            "exact propagation needs a positive distance, got {distance} m"
        )));
    }
    let lambda = field.lambda_db;
    let k = 2.0 * std::f64::consts::PI / lambda;

    let live: Vec<(f64, Complex64)> = field
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, &a)| (field.position(i), a))
        .collect();

    if let (Some(&(first, _)), Some(&(last, _))) = (live.first(), live.last()) {
        let out_lo = out_origin;
        let out_hi = out_origin + (out_len - 1) as f64 * out_spacing;
        let max_offset = (out_hi - first).abs().max((out_lo - last).abs());
        let reach = lambda * distance / (2.0 * out_spacing);
        if max_offset > reach {
            let required = ((out_len as f64) * max_offset / reach).ceil() as usize;
            return Err(KdError::Sampling {
                leg: "exact kernel output grid",
                spacing: out_spacing,
                limit: out_spacing * reach / max_offset,
                required_samples: required.next_power_of_two(),
            });
        }
    }

    // 1/sqrt(i) = e^{-i pi/4}
    let prefactor = Complex64::from_polar(field.spacing / lambda.sqrt(), -std::f64::consts::FRAC_PI_4);
    let amplitudes: Vec<Complex64> = (0..out_len)
        .into_par_iter()
        .map(|j| {
            let x = out_origin + j as f64 * out_spacing;
            let mut acc = Complex64::new(0.0, 0.0);
            for &(y, a) in &live {
                let d = x - y;
                let r = (d * d + distance * distance).sqrt();
                acc += a * Complex64::from_polar(1.0 / r.sqrt(), k * r);
            }
            acc * prefactor
        })
        .collect();

    Ok(WaveField {
        amplitudes,
        spacing: out_spacing,
        origin: out_origin,
        plane: field.plane,
        lambda_db: lambda,
    })
}

/// Pick the Fresnel form that keeps the concrete field well-sampled.
fn fresnel_auto(field: &WaveField, distance: f64) -> Result<WaveField> {
    let n = field.amplitudes.len();
    let window = field.spacing * n as f64;
    let lambda = field.lambda_db;

    // Occupied real-space support.
    let Some((lo, hi)) = occupied_range(&field.amplitudes, 1e-12) else {
        return Ok(WaveField {
            plane: field.plane,
            ..field.clone()
        });
    };
    let support_half = field
        .position(lo)
        .abs()
        .max(field.position(hi).abs());

    // Occupied band from the spectrum. FFT bin order is not frequency
    // order (a baseband spectrum occupies both array ends), so an index
    // range is meaningless here: take the largest |frequency| among bins
    // above threshold instead.
    let mut spectrum = field.amplitudes.clone();
    fft_in_place(&mut spectrum, true);
    let df = 1.0 / window;
    let peak = spectrum.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max);
    let thresh = 1e-12 * peak;
    let mut nu_occ = 0.0f64;
    for (i, a) in spectrum.iter().enumerate() {
        if a.norm_sqr() > thresh {
            let f = if i <= n / 2 {
                i as f64 * df
            } else {
                (i as f64 - n as f64) * df
            };
            nu_occ = nu_occ.max(f.abs());
        }
    }

    // Transfer function keeps the grid; valid while the propagated field
    // cannot reach the window edge (which would wrap around).
    let spread = lambda * distance * nu_occ;
    if support_half + spread <= window / 2.0 {
        return fresnel_transfer(field, distance, spectrum, df);
    }

    // Rescaling form: the input-side chirp must be resolved over the
    // occupied support.
    let reach = lambda * distance / (2.0 * field.spacing);
    if support_half > reach {
        let required = (n as f64 * support_half / reach).ceil() as usize;
        return Err(KdError::Sampling {
            leg: "fresnel rescaling chirp",
            spacing: field.spacing,
            limit: field.spacing * reach / support_half,
            required_samples: required.next_power_of_two(),
        });
    }
    fresnel_zoom(field, distance)
}

/// Transfer-function Fresnel step on an already-computed spectrum.
fn fresnel_transfer(
    field: &WaveField,
    distance: f64,
    mut spectrum: Vec<Complex64>,
    df: f64,
) -> Result<WaveField> {
    let n = spectrum.len();
    let lambda = field.lambda_db;
    let k = 2.0 * std::f64::consts::PI / lambda;
    let plane_phase = k * distance;
    for (i, v) in spectrum.iter_mut().enumerate() {
        let f = if i <= n / 2 {
            i as f64 * df
        } else {
            (i as f64 - n as f64) * df
        };
        let phase = plane_phase - std::f64::consts::PI * lambda * distance * f * f;
        *v *= Complex64::from_polar(1.0, phase);
    }
    fft_in_place(&mut spectrum, false);
    Ok(WaveField {
        amplitudes: spectrum,
        spacing: field.spacing,
        origin: field.origin,
        plane: field.plane,
        lambda_db: lambda,
    })
}

/// Single-FFT Fresnel form with output spacing λℓ/(NΔ).
///
/// With centered grids (x_i = (i-N/2)Δ, u_j = (j-N/2)du) the cross term of
/// the Fresnel integral is exactly the centered DFT, which equals
/// half_swap → FFT → half_swap for even N. The overall factor
/// (Δ/sqrt(λℓ)) e^{i(kℓ - π/4)} makes the step exactly unitary on the grid
/// (Parseval: Σ|out|² du = Σ|in|² Δ).
fn fresnel_zoom(field: &WaveField, distance: f64) -> Result<WaveField> {
    let n = field.amplitudes.len();
    if n % 2 != 0 {
        return Err(KdError::GridMismatch(format!(
            "rescaling propagation needs an even sample count, got {n}"
        )));
    }
    let lambda = field.lambda_db;
    let k = 2.0 * std::f64::consts::PI / lambda;
    let dx = field.spacing;
    let du = lambda * distance / (n as f64 * dx);
    let half = n as f64 / 2.0;
    // The algebra assumes x_i = (i - N/2) dx; the chain always builds such
    // grids, but verify rather than trust.
    let center_expect = -half * dx;
    if (field.origin - center_expect).abs() > 1e-9 * dx.max(1e-300) {
        return Err(KdError::GridMismatch(format!(
            "rescaling propagation needs a centered grid: origin {} vs -N/2 dx = {}",
            field.origin, center_expect
        )));
    }

    let mut buf: Vec<Complex64> = field
        .amplitudes
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let x = (i as f64 - half) * dx;
            a * Complex64::from_polar(1.0, k * x * x / (2.0 * distance))
        })
        .collect();
    half_swap(&mut buf);
    fft_in_place(&mut buf, true);
    half_swap(&mut buf);

    let scale = dx / (lambda * distance).sqrt();
    let global = Complex64::from_polar(scale, k * distance - std::f64::consts::FRAC_PI_4);
    for (j, v) in buf.iter_mut().enumerate() {
        let u = (j as f64 - half) * du;
        *v *= global * Complex64::from_polar(1.0, k * u * u / (2.0 * distance));
    }
    Ok(WaveField {
        amplitudes: buf,
        spacing: du,
        origin: -half * du,
        plane: field.plane,
        lambda_db: lambda,
    })
}
