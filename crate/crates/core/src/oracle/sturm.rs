//! Sturm-sequence bisection for symmetric tridiagonal matrices.

/// Number of eigenvalues strictly below `lambda`.
///
/// The count of negative pivots in the LDL^T factorisation of T - lambda I.
pub fn sturm_count(diagonal: &[f64], off_diag: &[f64], lambda: f64) -> usize {
    let Some(&first) = diagonal.first() else {
        return 0;
    };
    let mut q = first - lambda;
    let mut count = usize::from(q < 0.0);
    for (d, e) in diagonal[1..].iter().zip(off_diag) {
        let pivot = if q == 0.0 { f64::EPSILON * (d.abs() + e.abs()) } else { q };
        q = (d - lambda) - e * e / pivot;
        count += usize::from(q < 0.0);
    }
    count
}

/// Gershgorin interval containing every eigenvalue.
pub fn gershgorin(diagonal: &[f64], off_diag: &[f64]) -> (f64, f64) {
    let n = diagonal.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off_diag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off_diag[i].abs() } else { 0.0 };
        lo = lo.min(diagonal[i] - left - right);
        hi = hi.max(diagonal[i] + left + right);
    }
    (lo, hi)
}

/// The `count` smallest eigenvalues, ascending, each bisected to `rel_tol`.
pub fn lowest_eigenvalues(diagonal: &[f64], off_diag: &[f64], count: usize, rel_tol: f64) -> Vec<f64> {
    let n = diagonal.len();
    let count = count.min(n);
    if count == 0 {
        return Vec::new();
    }
    let (glo, ghi) = gershgorin(diagonal, off_diag);
    let mut out = Vec::with_capacity(count);
    let mut lower = glo;
    for k in 0..count {
        let mut a = lower;
        let mut b = ghi;
        for _ in 0..300 {
            let mid = 0.5 * (a + b);
            if b - a <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) || mid == a || mid == b {
                break;
            }
            if sturm_count(diagonal, off_diag, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        let value = 0.5 * (a + b);
        out.push(value);
        lower = a;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        // [[1, -1], [-1, 3]] -> 2 -+ sqrt(2)
        let ev = lowest_eigenvalues(&[1.0, 3.0], &[-1.0], 2, 1e-15);
        assert!((ev[0] - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!((ev[1] - (2.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // tridiag(-1, 2, -1) of size n: 2 - 2 cos(k pi / (n + 1))
        let n = 50;
        let d = vec![2.0; n];
        let e = vec![-1.0; n - 1];
        let ev = lowest_eigenvalues(&d, &e, 5, 1e-15);
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13, "{k}: {v} vs {exact}");
        }
        assert_eq!(sturm_count(&d, &e, 0.0), 0);
        assert_eq!(sturm_count(&d, &e, 4.1), n);
    }
}
