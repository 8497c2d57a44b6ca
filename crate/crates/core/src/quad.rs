//! Quadrature rules for averaging over the incoherent source.
//!
//! Two rules are used deliberately. Density-matrix construction integrates a
//! smooth Gaussian-weighted integrand and gets Gauss-Hermite nodes. Pattern
//! ensembles are different: each source point maps to a shifted fringe comb
//! at the screen, so the integrand oscillates on the fringe scale and
//! unevenly spaced GH nodes alias it. A uniform Gaussian-weighted rule with
//! spacing tied to the fringe period stays faithful there.

use crate::error::{KdError, Result};

/// Orthonormal Hermite recurrence: p_0 = pi^{-1/4},
/// p_{k+1} = x sqrt(2/(k+1)) p_k - sqrt(k/(k+1)) p_{k-1}.
/// Returns (p_n(x), p_{n-1}(x)).
fn hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let mut pk = std::f64::consts::PI.powf(-0.25);
    if n == 0 {
        return (pk, 0.0);
    }
    let mut pk_prev = 0.0;
    for k in 0..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * pk - (kf / (kf + 1.0)).sqrt() * pk_prev;
        pk_prev = pk;
        pk = next;
    }
    (pk, pk_prev)
}

/// Gauss-Hermite rule for ∫ f(x) e^{-x²} dx ≈ Σ w_i f(x_i).
///
/// Nodes are roots of H_n found by sign-change scan over [0, sqrt(2n+1)]
/// (all roots lie inside by the Hermite spectral bound), bisection, then a
/// Newton polish using p'_n = sqrt(2n) p_{n-1}. Weights are Christoffel
/// numbers 1/Σ_{k<n} p_k(x_i)². Stable to n ≈ 500, far past any use here.
pub fn gauss_hermite(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(KdError::Domain("gauss_hermite needs n >= 1".into()));
    }
    let bound = (2.0 * n as f64 + 1.0).sqrt();
    let scan = 8 * n;
    let mut positive_roots = Vec::with_capacity(n / 2 + 1);
    let mut prev_x = 0.0;
    let mut prev_p = hermite_pair(n, 0.0).0;
    if prev_p == 0.0 {
        // Odd n: the axis root is appended separately, so start sign
        // tracking just right of zero, where p_n carries the sign of its
        // derivative sqrt(2n) p_{n-1}(0).
        prev_p = hermite_pair(n, 0.0).1;
    }
    for i in 1..=scan {
        let x = bound * i as f64 / scan as f64;
        let p = hermite_pair(n, x).0;
        if p == 0.0 {
            // Scan point landed exactly on a (simple) root: record it and
            // continue with the flipped sign.
            positive_roots.push(x);
            prev_x = x;
            prev_p = -prev_p;
            continue;
        }
        if p.signum() != prev_p.signum() {
            positive_roots.push(refine_root(n, prev_x, x));
        }
        prev_x = x;
        prev_p = p;
    }
    if positive_roots.len() != n / 2 {
        return Err(KdError::Domain(format!(
            "gauss_hermite root scan found {} of {} positive roots at n={n}",
            positive_roots.len(),
            n / 2
        )));
    }
    let mut nodes = Vec::with_capacity(n);
    for &r in positive_roots.iter().rev() {
        nodes.push(-r);
    }
    if n % 2 == 1 {
        nodes.push(0.0);
    }
    nodes.extend(positive_roots);

    let weights = nodes
        .iter()
        .map(|&x| {
            // Christoffel: 1 / sum_{k<n} p_k(x)^2, accumulated by recurrence.
            let mut sum = 0.0;
            let mut pk = std::f64::consts::PI.powf(-0.25);
            let mut pk_prev = 0.0;
            for k in 0..n {
                sum += pk * pk;
                let kf = k as f64;
                let next =
                    x * (2.0 / (kf + 1.0)).sqrt() * pk - (kf / (kf + 1.0)).sqrt() * pk_prev;
                pk_prev = pk;
                pk = next;
            }
            1.0 / sum
        })
        .collect();
    Ok((nodes, weights))
}

fn refine_root(n: usize, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = hermite_pair(n, lo).0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let fmid = hermite_pair(n, mid).0;
        if fmid == 0.0 {
            return mid;
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi.max(1.0) {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let (p, p_prev) = hermite_pair(n, x);
        let dp = (2.0 * n as f64).sqrt() * p_prev;
        if dp == 0.0 {
            break;
        }
        x -= p / dp;
    }
    x
}

/// Gauss-Hermite nodes mapped to source offsets χ = sqrt(2) σ t for a
/// Gaussian source of standard deviation σ. Weights are normalized to sum
/// to 1; nodes below 1e-10 of the peak weight are dropped (they cannot move
/// any observable but cost a full chain propagation each).
pub fn source_nodes_gh(sigma: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    if sigma <= 0.0 {
        return Ok(vec![(0.0, 1.0)]);
    }
    let (nodes, weights) = gauss_hermite(n)?;
    let wmax = weights.iter().cloned().fold(0.0, f64::max);
    let mut out: Vec<(f64, f64)> = nodes
        .iter()
        .zip(&weights)
        .filter(|(_, &w)| w >= 1e-10 * wmax)
        .map(|(&t, &w)| (std::f64::consts::SQRT_2 * sigma * t, w))
        .collect();
    let total: f64 = out.iter().map(|(_, w)| w).sum();
    for (_, w) in &mut out {
        *w /= total;
    }
    Ok(out)
}

/// Uniform Gaussian-weighted source rule over ±5σ. Spacing is the tightest
/// of σ/3 (resolve the Gaussian), 2 µm (stay below the screen fringe
/// sensitivity scale of the benchmark geometry), and whatever is needed to
/// honor `min_points`. Node count is forced odd so the rule is symmetric
/// about the axis. Weights normalized to sum to 1.
pub fn source_nodes_uniform(sigma: f64, min_points: usize) -> Vec<(f64, f64)> {
    if sigma <= 0.0 {
        return vec![(0.0, 1.0)];
    }
    let half = 5.0 * sigma;
    let mut spacing = (sigma / 3.0).min(2e-6);
    if min_points > 1 {
        spacing = spacing.min(2.0 * half / (min_points - 1) as f64);
    }
    let half_count = (half / spacing).ceil() as i64;
    let mut out = Vec::with_capacity((2 * half_count + 1) as usize);
    let mut total = 0.0;
    for i in -half_count..=half_count {
        let x = i as f64 * spacing;
        let w = (-x * x / (2.0 * sigma * sigma)).exp();
        total += w;
        out.push((x, w));
    }
    for (_, w) in &mut out {
        *w /= total;
    }
    out
}
