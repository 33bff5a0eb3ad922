//! Adaptive Dormand–Prince 5(4) integration for small first-order systems.
//!
//! Integration may run in either direction. Every accepted step is reported
//! to an observer together with the state derivative, which is enough for
//! cubic Hermite reconstruction of the trajectory.

use crate::error::{Result, SpectralError};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    /// Upper bound on |h|; `f64::INFINITY` disables it.
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_step: f64::INFINITY,
            max_steps: 1_000_000,
        }
    }
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += c * k[i];
        }
    }
    out
}

impl Dopri5 {
    pub fn with_tolerance(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }

    pub fn max_step(mut self, h: f64) -> Self {
        self.max_step = h;
        self
    }

    fn error_norm<const N: usize>(&self, y0: &[f64; N], y1: &[f64; N], err: &[f64; N]) -> f64 {
        let mut acc = 0.0;
        for i in 0..N {
            let sc = self.atol + self.rtol * y0[i].abs().max(y1[i].abs());
            acc += (err[i] / sc).powi(2);
        }
        (acc / N as f64).sqrt()
    }

    fn initial_step<const N: usize, F>(&self, f: &mut F, t0: f64, y0: &[f64; N], f0: &[f64; N], dir: f64) -> f64
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let norm = |v: &[f64; N]| {
            let mut acc = 0.0;
            for i in 0..N {
                let sc = self.atol + self.rtol * y0[i].abs();
                acc += (v[i] / sc).powi(2);
            }
            (acc / N as f64).sqrt()
        };
        let d0 = norm(y0);
        let d1 = norm(f0);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let h0 = h0.min(self.max_step);
        let y1 = axpy(y0, &[(dir * h0, f0)]);
        let f1 = f(t0 + dir * h0, &y1);
        let mut diff = [0.0; N];
        for i in 0..N {
            diff[i] = f1[i] - f0[i];
        }
        let d2 = norm(&diff) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(self.max_step)
    }

    /// Integrates `y' = f(t, y)` from `t0` to `t1` and returns `y(t1)`.
    ///
    /// `observer` sees `(t, y, y')` at `t0` and after every accepted step.
    pub fn integrate<const N: usize, F, O>(
        &self,
        mut f: F,
        t0: f64,
        y0: [f64; N],
        t1: f64,
        mut observer: O,
    ) -> Result<[f64; N]>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
        O: FnMut(f64, &[f64; N], &[f64; N]),
    {
        let span = t1 - t0;
        if span == 0.0 {
            let d = f(t0, &y0);
            observer(t0, &y0, &d);
            return Ok(y0);
        }
        let dir = span.signum();
        let mut t = t0;
        let mut y = y0;
        let mut k1 = f(t, &y);
        observer(t, &y, &k1);
        let mut h = self.initial_step(&mut f, t, &y, &k1, dir).min(span.abs());
        let h_min = 1e-14 * t0.abs().max(t1.abs()).max(span.abs());

        let mut steps = 0;
        loop {
            if steps >= self.max_steps {
                return Err(SpectralError::StiffFailure { at: t, step: h });
            }
            steps += 1;
            let remaining = (t1 - t).abs();
            let last = h >= remaining;
            let hs = if last { remaining } else { h };
            let hd = dir * hs;

            let k2 = f(t + C2 * hd, &axpy(&y, &[(hd * A21, &k1)]));
            let k3 = f(t + C3 * hd, &axpy(&y, &[(hd * A31, &k1), (hd * A32, &k2)]));
            let k4 = f(
                t + C4 * hd,
                &axpy(&y, &[(hd * A41, &k1), (hd * A42, &k2), (hd * A43, &k3)]),
            );
            let k5 = f(
                t + C5 * hd,
                &axpy(
                    &y,
                    &[(hd * A51, &k1), (hd * A52, &k2), (hd * A53, &k3), (hd * A54, &k4)],
                ),
            );
            let k6 = f(
                t + hd,
                &axpy(
                    &y,
                    &[
                        (hd * A61, &k1),
                        (hd * A62, &k2),
                        (hd * A63, &k3),
                        (hd * A64, &k4),
                        (hd * A65, &k5),
                    ],
                ),
            );
            let y_new = axpy(
                &y,
                &[
                    (hd * A71, &k1),
                    (hd * A73, &k3),
                    (hd * A74, &k4),
                    (hd * A75, &k5),
                    (hd * A76, &k6),
                ],
            );
            let t_new = if last { t1 } else { t + hd };
            let k7 = f(t_new, &y_new);

            let mut err = [0.0; N];
            for i in 0..N {
                err[i] = hd
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            }
            let en = self.error_norm(&y, &y_new, &err);
            if !en.is_finite() {
                h = 0.25 * hs;
                if h < h_min {
                    return Err(SpectralError::StiffFailure { at: t, step: h });
                }
                continue;
            }

            if en <= 1.0 {
                t = t_new;
                y = y_new;
                k1 = k7;
                observer(t, &y, &k1);
                if last {
                    return Ok(y);
                }
                let factor = if en == 0.0 { 5.0 } else { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) };
                h = (hs * factor).min(self.max_step);
            } else {
                h = hs * (0.9 * en.powf(-0.2)).max(0.2);
                if h < h_min {
                    return Err(SpectralError::StiffFailure { at: t, step: h });
                }
            }
        }
    }

    /// Like [`Dopri5::integrate`] without an observer.
    pub fn solve<const N: usize, F>(&self, f: F, t0: f64, y0: [f64; N], t1: f64) -> Result<[f64; N]>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        self.integrate(f, t0, y0, t1, |_, _, _| {})
    }
}
