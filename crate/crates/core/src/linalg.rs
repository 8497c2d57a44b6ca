//! Minimal Hermitian linear algebra: positive-semidefiniteness via Cholesky.

use num_complex::Complex64;

/// True when the n×n Hermitian matrix (row-major) shifted by `shift·I` admits
/// a Cholesky factorization, i.e. `m + shift·I` is positive definite. With a
/// small positive shift this is the standard PSD-within-tolerance test.
pub fn hermitian_psd(matrix: &[Complex64], n: usize, shift: f64) -> bool {
    assert_eq!(matrix.len(), n * n, "matrix shape mismatch");
    let mut a = matrix.to_vec();
    for i in 0..n {
        a[i * n + i] += shift;
    }
    // In-place lower Cholesky; fail on any nonpositive pivot.
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d -= a[j * n + k].norm_sqr();
        }
        if !(d > 0.0) {
            return false;
        }
        let d = d.sqrt();
        a[j * n + j] = Complex64::new(d, 0.0);
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k].conj();
            }
            a[i * n + j] = s / d;
        }
    }
    true
}
