//! Sturm-sequence bisection for symmetric tridiagonal matrices.

const PIVOT_GUARD: f64 = 1e-300;

/// Number of eigenvalues strictly below `lambda`.
///
/// `off_diag[i]` couples rows `i` and `i + 1`.
pub fn sturm_count(diag: &[f64], off_diag: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off_diag[i - 1] * off_diag[i - 1] / q };
        q = diag[i] - lambda - coupling;
        if q == 0.0 {
            q = -PIVOT_GUARD;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing the whole spectrum.
pub fn gershgorin(diag: &[f64], off_diag: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off_diag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off_diag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

/// The `index`-th smallest eigenvalue (0-based) by bisection on the Sturm count.
pub fn kth_eigenvalue(diag: &[f64], off_diag: &[f64], index: usize) -> Option<f64> {
    if index >= diag.len() {
        return None;
    }
    let (mut lo, mut hi) = gershgorin(diag, off_diag);
    let pad = 1e-12 * lo.abs().max(hi.abs()).max(1.0);
    lo -= pad;
    hi += pad;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off_diag, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Solves `T x = rhs` for the tridiagonal `T` with `sub[i] = T[i+1][i]`,
/// `diag[i] = T[i][i]`, `sup[i] = T[i][i+1]` (Thomas algorithm, no pivoting).
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    if n == 0 || rhs.len() != n || sub.len() + 1 != n || sup.len() + 1 != n {
        return None;
    }
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut pivot = diag[0];
    if pivot == 0.0 {
        return None;
    }
    x[0] = rhs[0] / pivot;
    for i in 1..n {
        c[i - 1] = sup[i - 1] / pivot;
        pivot = diag[i] - sub[i - 1] * c[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return None;
        }
        x[i] = (rhs[i] - sub[i - 1] * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Some(x)
}
