//! Bracketed scalar root finding.

use crate::error::{Result, SpectralError};

/// Brent's method on a sign-changing bracket `[a, b]` with known end values.
///
/// Returns the root estimate and the number of function evaluations. The
/// first `bisections` iterations are plain bisection.
pub fn brent<F>(mut f: F, a: f64, b: f64, fa: f64, fb: f64, tol: f64, bisections: usize, max_iter: usize) -> Result<(f64, usize)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if fa == 0.0 {
        return Ok((a, 0));
    }
    if fb == 0.0 {
        return Ok((b, 0));
    }
    if fa.signum() == fb.signum() {
        return Err(SpectralError::BracketEmpty { lo: a, hi: b, f_lo: fa, f_hi: fb });
    }
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    for i in 0..bisections {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok((m, i + 1));
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;
    for iter in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok((b, bisections + iter));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Err(SpectralError::NoConvergence { iterations: max_iter, last_step: d })
}

/// Plain bisection until the bracket is narrower than `tol`.
pub fn bisect<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa.signum() == fb.signum() {
        return Err(SpectralError::BracketEmpty { lo: a, hi: b, f_lo: fa, f_hi: fb });
    }
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_cos() {
        let (x, n) = brent(|x| Ok(x.cos()), 1.0, 2.0, 1f64.cos(), 2f64.cos(), 1e-14, 2, 100).unwrap();
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        assert!(n < 20);
    }

    #[test]
    fn brent_rejects_empty_bracket() {
        let r = brent(|x| Ok(x * x + 1.0), -1.0, 1.0, 2.0, 2.0, 1e-12, 0, 50);
        assert!(matches!(r, Err(SpectralError::BracketEmpty { .. })));
    }

    #[test]
    fn bisect_sqrt2() {
        let x = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-12).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-12);
    }
}
