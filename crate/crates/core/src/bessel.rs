//! Integer-order Bessel functions of the first kind.
//!
//! Miller's downward recurrence with the even-order normalization
//! J_0 + 2 Σ_k J_{2k} = 1. Accurate to full double precision for the
//! moderate arguments (x ≲ 50) used by the thin-grating checks.

/// J_0(x) .. J_nmax(x). Negative x handled by parity J_n(-x) = (-1)^n J_n(x).
pub fn bessel_j(nmax: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut out = vec![0.0; nmax + 1];
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    // Start high enough that the seeded tail has fully decayed by nmax.
    let start = nmax + 20 + ax as usize;
    let mut jp = 0.0_f64; // J_{k+1}
    let mut j = 1e-300_f64; // J_k seed
    let mut out = vec![0.0; nmax + 1];
    let mut norm = 0.0;
    for k in (0..=start).rev() {
        let jm = 2.0 * (k as f64 + 1.0) / ax * j - jp;
        jp = j;
        j = jm;
        // After the update, j = J_k and jp = J_{k+1} (unnormalized).
        if k <= nmax {
            out[k] = j;
        }
        if k % 2 == 0 {
            norm += if k == 0 { j } else { 2.0 * j };
        }
        // Rescale periodically so the unnormalized recurrence cannot overflow.
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp *= s;
            norm *= s;
            for v in &mut out {
                *v *= s;
            }
        }
    }
    for v in &mut out {
        *v /= norm;
    }
    if x < 0.0 {
        for (k, v) in out.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_under_negation() {
        let pos = bessel_j(5, 3.2);
        let neg = bessel_j(5, -3.2);
        for k in 0..=5 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((neg[k] - sign * pos[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_argument() {
        let j = bessel_j(3, 0.0);
        assert_eq!(j, vec![1.0, 0.0, 0.0, 0.0]);
    }
}
