//! Rotationally symmetric drift heat flow on the capped cylinder and the
//! two-point modulus-of-continuity comparison.

use serde::Serialize;

use super::{symmetric_neumann_eigenvalue, ModelManifold};
use crate::error::{Result, SpectralError};
use crate::quadrature::gauss_legendre8;
use crate::spectra::{drift_problem, DEFAULT_TOL};
use crate::sturm_liouville::solve;
use crate::tridiagonal::solve_tridiagonal;

/// Backward Euler half steps replacing the first Crank–Nicolson step.
const STARTUP_HALF_STEPS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InitialData {
    /// The first symmetric eigenfunction of the manifold.
    Eigenfunction,
    /// `tanh(2x) + sin(2πx)/4` with `x = s - D/2`.
    GenericOdd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatOptions {
    pub cells: usize,
    pub dt: f64,
    pub t_end: f64,
    pub initial: InitialData,
}

impl Default for HeatOptions {
    fn default() -> Self {
        Self { cells: 256, dt: 1e-3, t_end: 1.0, initial: InitialData::GenericOdd }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub s1: f64,
    pub s2: f64,
    pub t: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatReport {
    pub initial: InitialData,
    pub cells: usize,
    pub dt: f64,
    pub steps: usize,
    pub t_end: f64,
    /// `C`, the smallest constant for which the bound holds at `t = 0`.
    pub constant: f64,
    pub lambda_bar: f64,
    /// Pair comparisons made for `t > 0`.
    pub checks: usize,
    pub violations: usize,
    /// Smallest `bound - |v(s2) - v(s1)|` seen for `t > 0`.
    pub min_slack: f64,
    pub worst: Option<Violation>,
    /// `max |v|` at `t_end`.
    pub final_sup: f64,
}

struct Scheme {
    centres: Vec<f64>,
    mass: Vec<f64>,
    /// `W` at interior faces divided by the cell width.
    conductance: Vec<f64>,
}

impl Scheme {
    fn new(m: &ModelManifold, cells: usize) -> Self {
        let d = m.d();
        let h = d / cells as f64;
        let n1 = (m.spec.n - 1) as f64;
        let weight = |s: f64| m.y(s).powf(n1) * (-m.f(s)).exp();
        let centres = (0..cells).map(|i| (i as f64 + 0.5) * h).collect();
        let mass = (0..cells).map(|i| gauss_legendre8(weight, i as f64 * h, (i + 1) as f64 * h)).collect();
        let conductance = (1..cells).map(|i| weight(i as f64 * h) / h).collect();
        Self { centres, mass, conductance }
    }

    /// Solves `(M + θ dt K) x = (M - (1-θ) dt K) v`.
    fn step(&self, v: &[f64], dt: f64, theta: f64) -> Result<Vec<f64>> {
        let n = v.len();
        let c = &self.conductance;
        let kv = |i: usize| {
            let mut acc = 0.0;
            if i > 0 {
                acc += c[i - 1] * (v[i] - v[i - 1]);
            }
            if i + 1 < n {
                acc += c[i] * (v[i] - v[i + 1]);
            }
            acc
        };
        let rhs: Vec<f64> = (0..n).map(|i| self.mass[i] * v[i] - (1.0 - theta) * dt * kv(i)).collect();
        let off: Vec<f64> = c.iter().map(|&x| -theta * dt * x).collect();
        let diag: Vec<f64> = (0..n)
            .map(|i| {
                let k = if i > 0 { c[i - 1] } else { 0.0 } + if i + 1 < n { c[i] } else { 0.0 };
                self.mass[i] + theta * dt * k
            })
            .collect();
        let next = solve_tridiagonal(&off, &diag, &off, &rhs)
            .ok_or_else(|| SpectralError::CflFailure("singular time-step matrix".into()))?;
        if next.iter().any(|x| !x.is_finite()) {
            return Err(SpectralError::CflFailure(format!("non-finite state after step dt = {dt}")));
        }
        Ok(next)
    }
}

/// Evolves the data and compares every pair of cell centres with
/// `2 C e^{-λ̄ t} ω̄(|s2 - s1| / 2)` at every step.
pub fn heat_modulus_report(m: &ModelManifold, opts: HeatOptions) -> Result<HeatReport> {
    if !(opts.dt > 0.0 && opts.dt.is_finite() && opts.t_end > 0.0 && opts.t_end.is_finite()) {
        return Err(SpectralError::CflFailure(format!("dt = {}, t_end = {}", opts.dt, opts.t_end)));
    }
    if opts.cells < 8 {
        return Err(SpectralError::CflFailure(format!("{} cells", opts.cells)));
    }
    let steps = (opts.t_end / opts.dt).round() as usize;
    if steps == 0 || ((steps as f64) * opts.dt - opts.t_end).abs() > 1e-9 * opts.t_end {
        return Err(SpectralError::CflFailure(format!("t_end = {} is not a multiple of dt = {}", opts.t_end, opts.dt)));
    }
    let d = m.d();
    let scheme = Scheme::new(m, opts.cells);
    let mid = 0.5 * d;
    let mut v: Vec<f64> = match opts.initial {
        InitialData::GenericOdd => scheme
            .centres
            .iter()
            .map(|&s| {
                let x = s - mid;
                (2.0 * x).tanh() + 0.25 * (2.0 * std::f64::consts::PI * x).sin()
            })
            .collect(),
        InitialData::Eigenfunction => {
            let w = symmetric_neumann_eigenvalue(m)?;
            scheme.centres.iter().map(|&s| w.eval(s).map_or(f64::NAN, |p| p.0)).collect()
        }
    };
    if v.iter().any(|x| !x.is_finite()) {
        return Err(SpectralError::CflFailure("initial data is not finite".into()));
    }

    let omega = solve(&drift_problem(m.spec.a, d), DEFAULT_TOL)?;
    let lambda_bar = omega.eigenvalue;
    let h = d / opts.cells as f64;
    // ω̄ at half of each possible pair distance k·h
    let profile: Vec<f64> = (0..opts.cells)
        .map(|k| omega.eval(0.5 * k as f64 * h).map_or(f64::NAN, |p| p.0))
        .collect();
    if profile[1..].iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(SpectralError::InvalidProblem("comparison profile is not positive".into()));
    }

    let n = opts.cells;
    let mut constant = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            constant = constant.max((v[j] - v[i]).abs() / (2.0 * profile[j - i]));
        }
    }

    let mut report = HeatReport {
        initial: opts.initial,
        cells: n,
        dt: opts.dt,
        steps,
        t_end: opts.t_end,
        constant,
        lambda_bar,
        checks: 0,
        violations: 0,
        min_slack: f64::INFINITY,
        worst: None,
        final_sup: 0.0,
    };
    let startup = STARTUP_HALF_STEPS / 2;
    for step in 1..=steps {
        if step <= startup {
            for _ in 0..STARTUP_HALF_STEPS / startup {
                v = scheme.step(&v, 0.5 * opts.dt, 1.0)?;
            }
        } else {
            v = scheme.step(&v, opts.dt, 0.5)?;
        }
        let t = step as f64 * opts.dt;
        let decay = 2.0 * constant * (-lambda_bar * t).exp();
        for i in 0..n {
            for j in i + 1..n {
                let slack = decay * profile[j - i] - (v[j] - v[i]).abs();
                report.checks += 1;
                if slack < 0.0 {
                    report.violations += 1;
                }
                if slack < report.min_slack {
                    report.min_slack = slack;
                    report.worst = Some(Violation { s1: scheme.centres[i], s2: scheme.centres[j], t, slack });
                }
            }
        }
    }
    report.final_sup = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    Ok(report)
}

/// Like [`heat_modulus_report`], failing on the first-recorded worst pair
/// when any comparison is violated.
pub fn heat_modulus_check(m: &ModelManifold, opts: HeatOptions) -> Result<HeatReport> {
    let report = heat_modulus_report(m, opts)?;
    if report.violations > 0 {
        let w = report.worst.expect("a violation was recorded");
        return Err(SpectralError::ModulusViolated { s1: w.s1, s2: w.s2, t: w.t, slack: w.slack });
    }
    Ok(report)
}
