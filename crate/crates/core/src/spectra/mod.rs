//! The drift-Laplacian eigenvalue `λ̄_{a,D}` and the Weber eigenvalue
//! `λ̂_{b,D}`, their identities, lower bounds and the soliton diameter bounds.

mod extended;
pub mod hypergeometric;

pub use extended::{weber_series_eigenvalue, weber_series_eigenvalue_pi};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};
use crate::roots;
use crate::sturm_liouville::{self, EigenSolution, Parity, SLProblem};

pub const DEFAULT_TOL: f64 = 1e-11;

/// Neumann problem for `u'' - a s u' + λ u = 0` on `[-D/2, D/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftEigenQuery {
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub tol: f64,
}

/// Dirichlet problem for `w'' + (λ - b s²) w = 0` on `[-D/2, D/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeberEigenQuery {
    pub b: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub tol: f64,
}

fn check_d_tol(d: f64, tol: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(SpectralError::InvalidProblem(format!("D = {d} must be positive")));
    }
    if !(tol > 0.0) {
        return Err(SpectralError::InvalidProblem(format!("tol = {tol} must be positive")));
    }
    Ok(())
}

impl DriftEigenQuery {
    pub fn new(a: f64, d: f64) -> Self {
        Self { a, d, tol: DEFAULT_TOL }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() {
            return Err(SpectralError::InvalidProblem(format!("a = {} is not finite", self.a)));
        }
        check_d_tol(self.d, self.tol)
    }

    pub fn problem(&self) -> SLProblem {
        drift_problem(self.a, self.d)
    }
}

impl WeberEigenQuery {
    pub fn new(b: f64, d: f64) -> Self {
        Self { b, d, tol: DEFAULT_TOL }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b >= 0.0 && self.b.is_finite()) {
            return Err(SpectralError::InvalidProblem(format!("b = {} must be non-negative", self.b)));
        }
        check_d_tol(self.d, self.tol)
    }

    pub fn problem(&self) -> SLProblem {
        weber_problem(self.b, self.d)
    }
}

pub fn drift_problem(a: f64, d: f64) -> SLProblem {
    SLProblem::symmetric(d, Parity::OddNeumann)
        .with_drift(move |s| a * s)
        .with_weight(move |s| (-0.5 * a * s * s).exp())
}

pub fn weber_problem(b: f64, d: f64) -> SLProblem {
    SLProblem::symmetric(d, Parity::EvenDirichlet).with_potential(move |s| b * s * s)
}

/// `λ̄_{a,D}` with its odd eigenfunction.
pub fn neumann_drift_eigenvalue(q: DriftEigenQuery) -> Result<EigenSolution> {
    q.validate()?;
    sturm_liouville::solve(&q.problem(), q.tol)
}

/// `λ̂_{b,D}` with its even, positive eigenfunction.
pub fn weber_dirichlet_eigenvalue(q: WeberEigenQuery) -> Result<EigenSolution> {
    q.validate()?;
    sturm_liouville::solve(&q.problem(), q.tol)
}

pub fn drift_eigenvalue(a: f64, d: f64) -> Result<f64> {
    neumann_drift_eigenvalue(DriftEigenQuery::new(a, d)).map(|s| s.eigenvalue)
}

pub fn weber_eigenvalue(b: f64, d: f64) -> Result<f64> {
    weber_dirichlet_eigenvalue(WeberEigenQuery::new(b, d)).map(|s| s.eigenvalue)
}

/// `a/2 + λ̂_{a²/4, D}`.
pub fn drift_from_weber(a: f64, d: f64) -> Result<f64> {
    Ok(0.5 * a + weber_eigenvalue(0.25 * a * a, d)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound {
    pub name: &'static str,
    pub value: f64,
    pub satisfied: bool,
    /// Whether the bound is proved for this `a` (only `π²/D²` when `a ≤ 0`).
    pub asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub lambda: f64,
    pub tol: f64,
    pub bounds: Vec<Bound>,
}

impl BoundsReport {
    /// All asserted bounds hold.
    pub fn holds(&self) -> bool {
        self.bounds.iter().all(|b| b.satisfied || !b.asserted)
    }

    pub fn get(&self, name: &str) -> Option<&Bound> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

pub const BOUND_A: &str = "a";
pub const BOUND_PW: &str = "pi^2/D^2";
pub const BOUND_SUM: &str = "a/2+pi^2/D^2";

/// `λ̄_{a,D}` against `a`, `π²/D²` and `a/2 + π²/D²`.
pub fn lower_bounds_drift(a: f64, d: f64, tol: f64) -> Result<BoundsReport> {
    let lambda = neumann_drift_eigenvalue(DriftEigenQuery::new(a, d))?.eigenvalue;
    let pw = PI * PI / (d * d);
    let make = |name, value: f64, asserted| Bound { name, value, satisfied: lambda >= value - tol, asserted };
    let positive = a > 0.0;
    // For a < 0 the π²/D² bound does not hold; it is only asserted at a = 0.
    let bounds = vec![
        make(BOUND_A, a, positive),
        make(BOUND_PW, pw, a >= 0.0),
        make(BOUND_SUM, 0.5 * a + pw, positive),
    ];
    Ok(BoundsReport { a, d, lambda, tol, bounds })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiameterBounds {
    pub a: f64,
    pub basic: f64,
    pub improved: f64,
}

pub fn basic_diameter_bound(a: f64) -> f64 {
    PI * (2.0 / (3.0 * a)).sqrt()
}

/// The `D` with `λ̄_{a,D} = 2a`, bracketed on `D = 0.1·2^k` and bisected.
pub fn improved_diameter_bound(a: f64, tol: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(SpectralError::InvalidProblem(format!("a = {a} must be positive")));
    }
    let g = |d: f64| drift_eigenvalue(a, d).map(|l| l - 2.0 * a);
    let mut lo = 0.1;
    let mut g_lo = g(lo)?;
    let first = lo;
    while g_lo <= 0.0 {
        lo *= 0.5;
        if lo < 1e-6 {
            return Err(SpectralError::RootNotBracketed { lo, hi: first });
        }
        g_lo = g(lo)?;
    }
    let mut hi = lo;
    loop {
        hi *= 2.0;
        if hi > 1e4 {
            return Err(SpectralError::RootNotBracketed { lo, hi });
        }
        if g(hi)? < 0.0 {
            break;
        }
        lo = hi;
    }
    roots::bisect(g, lo, hi, tol)
}

pub fn soliton_diameter_bounds(a: f64) -> Result<DiameterBounds> {
    let improved = improved_diameter_bound(a, 1e-10)?;
    Ok(DiameterBounds { a, basic: basic_diameter_bound(a), improved })
}
