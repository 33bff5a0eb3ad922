//! Rotationally symmetric spectrum of the capped cylinder.

use std::f64::consts::PI;

use serde::Serialize;

use super::{bakry_emery_report, build_manifold, ModelManifold, ProfileSpec};
use crate::error::{Result, SpectralError};
use crate::quadrature::composite_gl8;
use crate::spectra::{drift_eigenvalue, drift_problem, DEFAULT_TOL};
use crate::sturm_liouville::{solve, solve_with, EigenSolution, Parity, SLProblem, SolveOptions};

/// `u'' + ((n-1) y'/y - f') u' + λ u = 0` on `[0, D]` with weight
/// `y^{n-1} e^{-f}`, odd about `D/2`, regular at both poles.
pub fn manifold_problem(m: &ModelManifold) -> SLProblem {
    let n1 = (m.spec.n - 1) as f64;
    let (drift_m, weight_m) = (m.clone(), m.clone());
    SLProblem::new(0.0, m.d(), Parity::OddNeumann)
        .with_drift(move |s| drift_m.fp(s) - n1 * drift_m.yp(s) / drift_m.y(s))
        .with_weight(move |s| weight_m.y(s).powf(n1) * (-weight_m.f(s)).exp())
        .with_singular_endpoints(true, true)
}

/// First nonzero eigenvalue among rotationally symmetric functions.
pub fn symmetric_neumann_eigenvalue(m: &ModelManifold) -> Result<EigenSolution> {
    let opts = SolveOptions { tol: 1e-10, grid_size: 1024, refinements: 3, ..SolveOptions::default() };
    solve_with(&manifold_problem(m), opts)
}

/// Rayleigh quotient of the plateau test function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayleighBound {
    pub quotient: f64,
    /// `λ̄_{a, D-πr-2δ}`.
    pub lambda_bar_inner: f64,
    /// `D - πr - 2δ`.
    pub inner_length: f64,
}

/// `ℛ(ψ)` where `ψ` follows the first drift eigenfunction on the straight
/// part of the cylinder and is constant on the caps.
pub fn rayleigh_upper_bound(m: &ModelManifold) -> Result<RayleighBound> {
    let spec = &m.spec;
    let inner = spec.d - PI * spec.r - 2.0 * spec.delta;
    if !(inner > 0.0) {
        return Err(SpectralError::SpecInvalid(format!("no straight part: D - pi r - 2 delta = {inner}")));
    }
    let w = solve(&drift_problem(spec.a, inner), DEFAULT_TOL)?;
    let half = 0.5 * inner;
    let mid = 0.5 * spec.d;
    let psi = |s: f64| -> (f64, f64) {
        let x = s - mid;
        let (u, du) = w.eval(x.clamp(-half, half)).expect("clamped into the solved interval");
        if x.abs() >= half {
            (u, 0.0)
        } else {
            (u, du)
        }
    };
    let n1 = (spec.n - 1) as f64;
    let weight = |s: f64| m.y(s).powf(n1) * (-m.f(s)).exp();
    let panels = m.panels();
    let num = composite_gl8(|s| psi(s).1.powi(2) * weight(s), &panels);
    let den = composite_gl8(|s| psi(s).0.powi(2) * weight(s), &panels);
    Ok(RayleighBound { quotient: num / den, lambda_bar_inner: w.eigenvalue, inner_length: inner })
}

/// One row of a sharpness sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessRow {
    pub r: f64,
    pub delta: f64,
    pub min_rcf_margin: f64,
    pub diameter: f64,
    pub lambda_sym: f64,
    /// `λ̄_{a, diameter}`.
    pub lower_sandwich: f64,
    /// `λ̄_{a, D-πr-2δ}`.
    pub upper_sandwich: f64,
}

impl SharpnessRow {
    pub fn sandwich_holds(&self, tol: f64) -> bool {
        self.lower_sandwich - tol <= self.lambda_sym && self.lambda_sym <= self.upper_sandwich + tol
    }
}

pub fn sharpness_row(spec: ProfileSpec) -> Result<SharpnessRow> {
    let m = build_manifold(spec)?;
    let rcf = bakry_emery_report(&m, spec.a)?;
    let lambda_sym = symmetric_neumann_eigenvalue(&m)?.eigenvalue;
    let inner = spec.d - PI * spec.r - 2.0 * spec.delta;
    Ok(SharpnessRow {
        r: spec.r,
        delta: spec.delta,
        min_rcf_margin: rcf.margin,
        diameter: m.diameter,
        lambda_sym,
        lower_sandwich: drift_eigenvalue(spec.a, m.diameter)?,
        upper_sandwich: drift_eigenvalue(spec.a, inner)?,
    })
}
