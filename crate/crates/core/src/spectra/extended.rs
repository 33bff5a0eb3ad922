//! Double-double Weber eigenvalue from the even power series of the
//! eigenfunction, for comparisons below `f64` resolution.

use twofloat::TwoFloat;

use crate::error::{Result, SpectralError};

const MAX_TERMS: usize = 4000;
const NEWTON_STEPS: usize = 60;

/// `u(x)` and `∂u/∂λ (x)` for the even solution with `u(0) = 1`.
fn series_at(b: f64, lambda: TwoFloat, x: TwoFloat) -> Result<(TwoFloat, TwoFloat)> {
    let x2 = x * x;
    let x4 = x2 * x2;
    // c[n], d[n] for even n; coefficients are stored already multiplied by x^n
    let zero = TwoFloat::from(0.0);
    let (mut c_prev, mut c) = (zero, TwoFloat::from(1.0));
    let (mut d_prev, mut d) = (zero, zero);
    let (mut u, mut du) = (c, d);
    let mut largest = 1.0f64;
    let mut quiet = 0;
    let mut n = 0usize;
    while n < MAX_TERMS {
        let denom = ((n + 2) * (n + 1)) as f64;
        let c_next = (-(lambda * c) * x2 + c_prev * (x4 * b)) / denom;
        let d_next = (-(c + lambda * d) * x2 + d_prev * (x4 * b)) / denom;
        c_prev = c;
        c = c_next;
        d_prev = d;
        d = d_next;
        u += c;
        du += d;
        largest = largest.max(c.hi().abs()).max(d.hi().abs());
        let small = 1e-34 * u.hi().abs().max(du.hi().abs()).max(1e-300);
        if c.hi().abs() <= small && d.hi().abs() <= small && c_prev.hi().abs() <= small {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        n += 2;
    }
    if n >= MAX_TERMS {
        return Err(SpectralError::NoConvergence { iterations: MAX_TERMS, last_step: c.hi() });
    }
    let digits_lost = (largest / u.hi().abs().max(du.hi().abs())).log10();
    if digits_lost > 14.0 {
        return Err(SpectralError::EvaluationUnstable { digits_lost });
    }
    Ok((u, du))
}

/// First Dirichlet eigenvalue of `w'' + (λ - b s²) w = 0` on `[-x, x]`,
/// refined by Newton's method from `guess`.
pub fn weber_series_eigenvalue(b: f64, half_width: TwoFloat, guess: f64) -> Result<TwoFloat> {
    if !(b >= 0.0) || !(half_width.hi() > 0.0) {
        return Err(SpectralError::InvalidProblem(format!(
            "b = {b} and half width {} must be non-negative and positive",
            half_width.hi()
        )));
    }
    let mut lambda = TwoFloat::from(guess);
    let mut step = f64::INFINITY;
    for _ in 0..NEWTON_STEPS {
        let (u, du) = series_at(b, lambda, half_width)?;
        let delta = u / du;
        lambda -= delta;
        step = delta.hi().abs();
        if step <= 1e-31 * lambda.hi().abs().max(1.0) {
            return Ok(lambda);
        }
    }
    Err(SpectralError::NoConvergence { iterations: NEWTON_STEPS, last_step: step })
}

/// `λ̂_{b,π}` in double-double precision.
pub fn weber_series_eigenvalue_pi(b: f64, guess: f64) -> Result<TwoFloat> {
    weber_series_eigenvalue(b, twofloat::consts::FRAC_PI_2, guess)
}
