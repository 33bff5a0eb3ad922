//! Capped cylinder of revolution with a potential: two spherical caps of
//! radius `r` joined to a cylinder across smoothing bands of half-width `δ`,
//! with potential `f` whose Hessian is `a` on the cylinder.
//!
//! Everything is tabulated on `[0, D/2]` and extended to `[0, D]` by the
//! reflection `s ↦ D - s`.

mod curvature;
mod heat;
mod spectrum;

pub use curvature::{bakry_emery_report, RcfReport, RcfSample, POLE_RADIUS_FRACTION};
pub use heat::{heat_modulus_check, heat_modulus_report, HeatOptions, HeatReport, InitialData, Violation};
pub use spectrum::{
    manifold_problem, rayleigh_upper_bound, sharpness_row, symmetric_neumann_eigenvalue, RayleighBound, SharpnessRow,
};

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};
use crate::ode::Dopri5;

fn bump(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth nonincreasing step: 1 for `s ≤ -1`, 0 for `s ≥ 1`, and
/// `φ(s) + φ(-s) = 1`.
pub fn smoothing_function(s: f64) -> f64 {
    let t = 0.5 * (s + 1.0);
    let (lo, hi) = (bump(t), bump(1.0 - t));
    hi / (lo + hi)
}

pub const DEFAULT_GRID_POINTS: usize = 4096;
// Hermite interpolation of θ and y' across a band loses accuracy like (h/δ)⁴.
const MIN_BAND_INTERVALS: usize = 512;
const MIN_GRID_POINTS: usize = 128;

/// Parameters of the capped cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawProfileSpec")]
pub struct ProfileSpec {
    pub n: usize,
    pub r: f64,
    pub delta: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub a: f64,
    pub grid_points: usize,
}

#[derive(Deserialize)]
struct RawProfileSpec {
    n: usize,
    r: f64,
    delta: Option<f64>,
    #[serde(rename = "D")]
    d: f64,
    a: f64,
    grid_points: Option<usize>,
}

impl From<RawProfileSpec> for ProfileSpec {
    fn from(raw: RawProfileSpec) -> Self {
        Self {
            n: raw.n,
            r: raw.r,
            delta: raw.delta.unwrap_or(raw.r / 10.0),
            d: raw.d,
            a: raw.a,
            grid_points: raw.grid_points.unwrap_or(DEFAULT_GRID_POINTS),
        }
    }
}

impl ProfileSpec {
    /// `δ = r/10` and the default grid.
    pub fn new(n: usize, r: f64, d: f64, a: f64) -> Self {
        Self { n, r, delta: r / 10.0, d, a, grid_points: DEFAULT_GRID_POINTS }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    /// Centre `πr/2` of the smoothing band.
    pub fn band_centre(&self) -> f64 {
        0.5 * PI * self.r
    }

    /// Caps meet at the equator: the round sphere of radius `D/π`.
    pub fn is_sphere(&self) -> bool {
        (self.band_centre() - 0.5 * self.d).abs() <= 1e-12 * self.d
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(SpectralError::SpecInvalid(msg));
        if self.n < 2 {
            return bad(format!("n = {} must be at least 2", self.n));
        }
        if !(self.r > 0.0 && self.delta > 0.0 && self.d > 0.0) || !self.a.is_finite() {
            return bad(format!("r = {}, delta = {}, D = {} must be positive", self.r, self.delta, self.d));
        }
        if self.delta >= self.r / 4.0 {
            return bad(format!("delta = {} must be below r/4 = {}", self.delta, self.r / 4.0));
        }
        let half = 0.5 * self.d;
        if !self.is_sphere() && self.band_centre() + self.delta >= half {
            return bad(format!(
                "pi r/2 + delta = {} must be below D/2 = {half}",
                self.band_centre() + self.delta
            ));
        }
        if self.grid_points < MIN_GRID_POINTS {
            return bad(format!("grid_points = {} is below {MIN_GRID_POINTS}", self.grid_points));
        }
        Ok(())
    }
}

/// Tabulated profile on `[0, D/2]`.
#[derive(Debug, Clone)]
struct HalfTable {
    s: Vec<f64>,
    theta: Vec<f64>,
    y: Vec<f64>,
    yp: Vec<f64>,
    fp: Vec<f64>,
    f: Vec<f64>,
}

/// A capped cylinder tabulated from a [`ProfileSpec`].
#[derive(Debug, Clone)]
pub struct ModelManifold {
    pub spec: ProfileSpec,
    /// `πr/2 - δ`, `πr/2 + δ`, `D - πr/2 - δ`, `D - πr/2 + δ`.
    pub breakpoints: [f64; 4],
    /// Pole-to-pole arc length, equal to `D`.
    pub profile_length: f64,
    pub diameter: f64,
    /// `y'` just below the equator; zero unless the caps meet there.
    pub equator_slope: f64,
    half: Arc<HalfTable>,
}

/// One row of the tabulated profile on `[0, D]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub s: f64,
    pub k: f64,
    pub theta: f64,
    pub y: f64,
    pub yprime: f64,
    pub f: f64,
    pub fprime: f64,
    pub fsecond: f64,
}

fn half_grid(spec: &ProfileSpec) -> Vec<f64> {
    let half = 0.5 * spec.d;
    let c = spec.band_centre();
    let b1 = c - spec.delta;
    let b2 = (c + spec.delta).min(half);
    let total = spec.grid_points / 2;
    let mut pieces = vec![(0.0, b1), (b1, b2)];
    if b2 < half {
        pieces.push((b2, half));
    }
    let mut s = vec![0.0];
    for (lo, hi) in pieces {
        let share = ((hi - lo) / half * total as f64).round() as usize;
        let count = share.max(if lo == b1 { MIN_BAND_INTERVALS } else { 8 });
        for i in 1..=count {
            s.push(if i == count { hi } else { lo + (hi - lo) * i as f64 / count as f64 });
        }
    }
    s
}

/// Tabulates the profile and checks `f'(D/2) = 0`.
pub fn build_manifold(spec: ProfileSpec) -> Result<ModelManifold> {
    spec.validate()?;
    let grid = half_grid(&spec);
    let k = |s: f64| curvature_half(&spec, s);
    let fpp = |s: f64| potential_hessian_half(&spec, s);
    let rhs = |s: f64, x: &[f64; 4]| [k(s), x[0].cos(), fpp(s), x[2]];
    let rk = Dopri5::with_tolerance(1e-13, 1e-15);
    let mut table = HalfTable {
        s: grid.clone(),
        theta: Vec::with_capacity(grid.len()),
        y: Vec::with_capacity(grid.len()),
        yp: Vec::with_capacity(grid.len()),
        fp: Vec::with_capacity(grid.len()),
        f: Vec::with_capacity(grid.len()),
    };
    let mut state = [0.0, 0.0, 0.0, 0.0];
    for (i, &s) in grid.iter().enumerate() {
        if i > 0 {
            state = rk.solve(rhs, grid[i - 1], state, s)?;
        }
        table.theta.push(state[0]);
        table.y.push(state[1]);
        table.yp.push(state[0].cos());
        table.fp.push(state[2]);
        table.f.push(state[3]);
    }
    let fp_mid = *table.fp.last().unwrap();
    if fp_mid.abs() > 1e-9 {
        return Err(SpectralError::ReflectionMismatch { value: fp_mid });
    }
    let c = spec.band_centre();
    let equator_slope = *table.yp.last().unwrap();
    Ok(ModelManifold {
        spec,
        breakpoints: [c - spec.delta, c + spec.delta, spec.d - c - spec.delta, spec.d - c + spec.delta],
        profile_length: spec.d,
        diameter: spec.d,
        equator_slope,
        half: Arc::new(table),
    })
}

fn curvature_half(spec: &ProfileSpec, t: f64) -> f64 {
    smoothing_function((t - spec.band_centre()) / spec.delta) / spec.r
}

fn potential_hessian_half(spec: &ProfileSpec, t: f64) -> f64 {
    let phi = smoothing_function((t - spec.band_centre()) / spec.delta);
    spec.a - phi * spec.a * spec.d / (PI * spec.r)
}

fn hermite(h: f64, x: f64, y0: f64, d0: f64, y1: f64, d1: f64) -> f64 {
    let x2 = x * x;
    let x3 = x2 * x;
    (2.0 * x3 - 3.0 * x2 + 1.0) * y0 + h * (x3 - 2.0 * x2 + x) * d0 + (-2.0 * x3 + 3.0 * x2) * y1 + h * (x3 - x2) * d1
}

impl ModelManifold {
    pub fn d(&self) -> f64 {
        self.spec.d
    }

    /// Mirror point in `[0, D/2]` and whether `s` was reflected.
    fn fold(&self, s: f64) -> (f64, bool) {
        let half = 0.5 * self.spec.d;
        if s > half {
            ((self.spec.d - s).max(0.0), true)
        } else {
            (s.max(0.0), false)
        }
    }

    fn interpolate(&self, t: f64, values: &[f64], slopes: impl Fn(usize) -> f64) -> f64 {
        let s = &self.half.s;
        let i = s.partition_point(|&x| x <= t).clamp(1, s.len() - 1);
        let h = s[i] - s[i - 1];
        hermite(h, (t - s[i - 1]) / h, values[i - 1], slopes(i - 1), values[i], slopes(i))
    }

    pub fn k(&self, s: f64) -> f64 {
        curvature_half(&self.spec, self.fold(s).0)
    }

    pub fn fpp(&self, s: f64) -> f64 {
        potential_hessian_half(&self.spec, self.fold(s).0)
    }

    pub fn theta(&self, s: f64) -> f64 {
        let (t, flipped) = self.fold(s);
        let h = &self.half;
        let v = self.interpolate(t, &h.theta, |i| curvature_half(&self.spec, h.s[i]));
        if flipped {
            PI - v
        } else {
            v
        }
    }

    pub fn y(&self, s: f64) -> f64 {
        let t = self.fold(s).0;
        self.interpolate(t, &self.half.y, |i| self.half.yp[i])
    }

    pub fn yp(&self, s: f64) -> f64 {
        let (t, flipped) = self.fold(s);
        let h = &self.half;
        let v = self.interpolate(t, &h.yp, |i| -curvature_half(&self.spec, h.s[i]) * h.theta[i].sin());
        if flipped {
            -v
        } else {
            v
        }
    }

    pub fn f(&self, s: f64) -> f64 {
        let t = self.fold(s).0;
        self.interpolate(t, &self.half.f, |i| self.half.fp[i])
    }

    pub fn fp(&self, s: f64) -> f64 {
        let (t, flipped) = self.fold(s);
        let h = &self.half;
        let v = self.interpolate(t, &h.fp, |i| potential_hessian_half(&self.spec, h.s[i]));
        if flipped {
            -v
        } else {
            v
        }
    }

    /// Grid nodes on `[0, D]`, symmetric about `D/2`.
    pub fn nodes(&self) -> Vec<f64> {
        let s = &self.half.s;
        let d = self.spec.d;
        let mut out = s.clone();
        out.extend(s.iter().rev().skip(1).map(|&t| d - t));
        out
    }

    /// The tabulated profile on `[0, D]`, reflected exactly from the half table.
    pub fn table(&self) -> Vec<ProfileRow> {
        let h = &self.half;
        let n = h.s.len();
        let d = self.spec.d;
        let row = |i: usize, flipped: bool| {
            let (sign, s) = if flipped { (-1.0, d - h.s[i]) } else { (1.0, h.s[i]) };
            ProfileRow {
                s,
                k: curvature_half(&self.spec, h.s[i]),
                theta: if flipped { PI - h.theta[i] } else { h.theta[i] },
                y: h.y[i],
                yprime: sign * h.yp[i],
                f: h.f[i],
                fprime: sign * h.fp[i],
                fsecond: potential_hessian_half(&self.spec, h.s[i]),
            }
        };
        let mut out: Vec<ProfileRow> = (0..n).map(|i| row(i, false)).collect();
        out.extend((0..n - 1).rev().map(|i| row(i, true)));
        out
    }

    /// Panel boundaries on `[0, D]` for quadrature: the grid nodes.
    pub fn panels(&self) -> Vec<f64> {
        self.nodes()
    }
}
