//! Confluent hypergeometric functions and the root characterisations of the
//! Weber eigenvalue built from them.
//!
//! These are a validation path; the ODE solvers are the ground truth.

use twofloat::TwoFloat;

use crate::error::{Result, SpectralError};
use crate::quadrature::exp_sinh_positive;

/// Digits that a recurrence may lose before the value is refused.
pub const MAX_DIGITS_LOST: f64 = 6.0;

const SERIES_TERMS: usize = 5000;

/// Kummer's `M(a, b, z)` by its power series in double-double arithmetic.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    if b <= 0.0 && b.fract() == 0.0 {
        return Err(SpectralError::InvalidProblem(format!("M(a, {b}, z) is undefined")));
    }
    let mut term = TwoFloat::from(1.0);
    let mut sum = term;
    let mut largest = 1.0f64;
    for n in 0..SERIES_TERMS {
        let nf = n as f64;
        term = term * ((a + nf) * z) / ((b + nf) * (nf + 1.0));
        sum += term;
        largest = largest.max(term.hi().abs());
        if term.hi() == 0.0 || (term.hi().abs() < 1e-33 * sum.hi().abs() && nf > z.abs()) {
            let digits_lost = (largest / sum.hi().abs()).log10();
            // double-double carries ~32 digits; the f64 result needs 16 of them
            if digits_lost > 16.0 {
                return Err(SpectralError::EvaluationUnstable { digits_lost });
            }
            return Ok(sum.hi() + sum.lo());
        }
    }
    Err(SpectralError::NoConvergence { iterations: SERIES_TERMS, last_step: term.hi() })
}

/// `U(a, b, z)` for `a > 0`, `z > 0` from
/// `Γ(a) U = ∫₀^∞ e^{-zt} t^{a-1} (1+t)^{b-a-1} dt`.
fn tricomi_u_integral(a: f64, b: f64, z: f64) -> f64 {
    let integral = exp_sinh_positive(|t| -z * t + (a - 1.0) * t.ln() + (b - a - 1.0) * t.ln_1p(), 1e-15);
    integral / libm::tgamma(a)
}

/// Tricomi's `U(a, b, z)` for `z > 0`.
///
/// Uses the integral for `a ≥ 1/2` and the downward contiguous recurrence
/// `U(a-1) = (2a - b + z) U(a) - a(a - b + 1) U(a+1)` otherwise. The
/// propagated rounding error is tracked and the value is refused once more
/// than [`MAX_DIGITS_LOST`] digits are gone.
pub fn tricomi_u(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(SpectralError::InvalidProblem(format!("U(a, b, z) needs z > 0, got {z}")));
    }
    if a >= 0.5 {
        return Ok(tricomi_u_integral(a, b, z));
    }
    let steps = (0.5 - a).floor() as usize + 1;
    let top = a + steps as f64;
    let mut upper = tricomi_u_integral(top + 1.0, b, z);
    let mut current = tricomi_u_integral(top, b, z);
    let eps = f64::EPSILON;
    let mut err_upper = 4.0 * eps * upper.abs();
    let mut err_current = 4.0 * eps * current.abs();
    let mut alpha = top;
    for _ in 0..steps {
        let c1 = 2.0 * alpha - b + z;
        let c2 = alpha * (alpha - b + 1.0);
        let t1 = c1 * current;
        let t2 = c2 * upper;
        let next = t1 - t2;
        let err_next = c1.abs() * err_current + c2.abs() * err_upper + eps * t1.abs().max(t2.abs());
        upper = current;
        err_upper = err_current;
        current = next;
        err_current = err_next;
        alpha -= 1.0;
    }
    let digits_lost = if current == 0.0 {
        f64::INFINITY
    } else {
        (err_current / (eps * current.abs())).log10().max(0.0)
    };
    if digits_lost >= MAX_DIGITS_LOST {
        return Err(SpectralError::EvaluationUnstable { digits_lost });
    }
    Ok(current)
}

/// The characteristic `U(1/4 - λ/8, 1/2, D²/2)` in the form printed for the
/// unit oscillator.
pub fn tricomi_characteristic(lambda: f64, d: f64) -> Result<f64> {
    check_d(d)?;
    tricomi_u(0.25 - lambda / 8.0, 0.5, 0.5 * d * d)
}

/// `M(1/4 - λ/(4√b), 1/2, √b D²/4)`, whose first root in `λ` is `λ̂_{b,D}`.
pub fn kummer_characteristic(lambda: f64, b: f64, d: f64) -> Result<f64> {
    check_d(d)?;
    if !(b > 0.0) {
        return Err(SpectralError::InvalidProblem(format!("b = {b} must be positive")));
    }
    let rb = b.sqrt();
    kummer_m(0.25 - lambda / (4.0 * rb), 0.5, 0.25 * rb * d * d)
}

/// `e^{-s²} U(1/4 - λ/8, 1/2, 2s²)`, the closed form as printed.
pub fn printed_closed_form(lambda: f64, s: f64) -> Result<f64> {
    Ok((-s * s).exp() * tricomi_u(0.25 - lambda / 8.0, 0.5, 2.0 * s * s)?)
}

/// `e^{-s²/2} U(1/4 - λ/4, 1/2, s²)`, the decaying solution of the unit
/// oscillator equation.
pub fn decaying_closed_form(lambda: f64, s: f64) -> Result<f64> {
    Ok((-0.5 * s * s).exp() * tricomi_u(0.25 - 0.25 * lambda, 0.5, s * s)?)
}

/// `e^{-s²/2} M(1/4 - λ/4, 1/2, s²)`, the even solution of the unit
/// oscillator equation with value 1 at the origin.
pub fn even_closed_form(lambda: f64, s: f64) -> Result<f64> {
    Ok((-0.5 * s * s).exp() * kummer_m(0.25 - 0.25 * lambda, 0.5, s * s)?)
}

fn check_d(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(SpectralError::InvalidProblem(format!("D = {d} must be positive")))
    }
}
