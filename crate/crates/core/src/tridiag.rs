//! Smallest eigenvalues of a real symmetric tridiagonal matrix by Sturm
//! sequence counting and bisection. Robust for the finite-difference
//! Hamiltonians used here (no eigenvectors needed).

/// Number of eigenvalues strictly below `lambda` (Sturm/LDL^T pivot count).
fn count_below(diag: &[f64], offdiag: &[f64], lambda: f64) -> usize {
    let n = diag.len();
    let mut count = 0usize;
    let mut d = diag[0] - lambda;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let b2 = offdiag[i - 1] * offdiag[i - 1];
        let mut denom = d;
        if denom == 0.0 {
            denom = f64::MIN_POSITIVE.sqrt();
        }
        d = (diag[i] - lambda) - b2 / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues, ascending.
pub fn smallest_eigenvalues(diag: &[f64], offdiag: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    assert!(n >= 2, "matrix must be at least 2 x 2");
    assert_eq!(offdiag.len(), n - 1, "offdiagonal length must be n - 1");
    assert!(k >= 1 && k <= n, "requested {k} eigenvalues of an {n} x {n} matrix");

    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { offdiag[i - 1].abs() } else { 0.0 }
            + if i < n - 1 { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }

    (1..=k)
        .map(|j| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..300 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if count_below(diag, offdiag, mid) >= j {
                    b = mid;
                } else {
                    a = mid;
                }
                let tol = 1e-13 * mid.abs().max(1e-12);
                if b - a <= tol {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn dirichlet_laplacian_matches_analytic_spectrum() {
        // -u'' on (0, L), Dirichlet: FD matrix eigenvalues are
        // (2 - 2 cos(m pi / (n + 1))) / h^2
        let n = 500;
        let l = 1.0;
        let h = l / (n + 1) as f64;
        let diag = vec![2.0 / (h * h); n];
        let off = vec![-1.0 / (h * h); n - 1];
        let got = smallest_eigenvalues(&diag, &off, 5);
        for (m, ev) in got.iter().enumerate() {
            let exact = (2.0 - 2.0 * ((m + 1) as f64 * PI / (n + 1) as f64).cos()) / (h * h);
            assert_relative_eq!(*ev, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn harmonic_oscillator_levels() {
        // -u'' + x^2 u on [-12, 12]: levels 1, 3, 5, 7 up to O(h^2)
        let n = 4001;
        let h = 24.0 / (n + 1) as f64;
        let diag: Vec<f64> = (0..n)
            .map(|i| {
                let x = -12.0 + (i + 1) as f64 * h;
                2.0 / (h * h) + x * x
            })
            .collect();
        let off = vec![-1.0 / (h * h); n - 1];
        let got = smallest_eigenvalues(&diag, &off, 4);
        for (i, ev) in got.iter().enumerate() {
            assert_relative_eq!(*ev, (2 * i + 1) as f64, max_relative = 1e-5);
        }
    }

    #[test]
    fn eigenvalues_are_ascending() {
        let diag = vec![4.0, 1.0, 3.0, 2.0, 5.0];
        let off = vec![0.5, -0.2, 0.1, 0.9];
        let ev = smallest_eigenvalues(&diag, &off, 5);
        for w in ev.windows(2) {
            assert!(w[0] <= w[1] + 1e-12);
        }
        // trace is preserved by the full spectrum
        let trace: f64 = diag.iter().sum();
        let sum: f64 = ev.iter().sum();
        assert_relative_eq!(sum, trace, max_relative = 1e-10);
    }
}
