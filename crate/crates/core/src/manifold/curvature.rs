//! Eigenvalues of the Bakry–Emery Ricci tensor `Rc + ∇²f` of the capped
//! cylinder, computed from the tabulated geometry.

use serde::Serialize;

use super::ModelManifold;
use crate::error::{Result, SpectralError};

/// Inside `s < POLE_RADIUS_FRACTION · r` of either pole the quotients
/// `sin θ / y` and `sin² θ / y²` are replaced by their limit `k(0)²`.
pub const POLE_RADIUS_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RcfSample {
    pub s: f64,
    /// Eigenvalue on `∂_s`.
    pub radial: f64,
    /// Eigenvalue on the `n - 1` directions tangent to the orbit sphere.
    pub tangential: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RcfReport {
    pub a: f64,
    pub samples: Vec<RcfSample>,
    pub min_eigenvalue: f64,
    /// `min_eigenvalue - a`.
    pub margin: f64,
}

impl RcfReport {
    /// `Rc_f ≥ a g` up to `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.margin >= -tol
    }
}

impl ModelManifold {
    /// `(radial, tangential)` at `s`.
    pub fn rcf_eigenvalues(&self, s: f64) -> (f64, f64) {
        let n1 = (self.spec.n - 1) as f64;
        let n2 = (self.spec.n - 2) as f64;
        let k = self.k(s);
        let fpp = self.fpp(s);
        let pole = s.min(self.d() - s);
        if pole < POLE_RADIUS_FRACTION * self.spec.r {
            let k0 = self.k(0.0);
            let v = n1 * k0 * k0 + fpp;
            return (v, v);
        }
        let y = self.y(s);
        let sin_theta = self.theta(s).sin().abs();
        let yp = self.yp(s);
        let radial = n1 * k * sin_theta / y + fpp;
        let tangential = k * sin_theta / y + n2 * sin_theta * sin_theta / (y * y) + yp / y * self.fp(s);
        (radial, tangential)
    }
}

/// Both eigenvalue branches at every grid node.
pub fn bakry_emery_report(m: &ModelManifold, a: f64) -> Result<RcfReport> {
    let mut samples = Vec::new();
    let mut min_eigenvalue = f64::INFINITY;
    for s in m.nodes() {
        let (radial, tangential) = m.rcf_eigenvalues(s);
        if !(radial.is_finite() && tangential.is_finite()) {
            return Err(SpectralError::PoleSingular { at: s });
        }
        min_eigenvalue = min_eigenvalue.min(radial).min(tangential);
        samples.push(RcfSample { s, radial, tangential });
    }
    Ok(RcfReport { a, samples, min_eigenvalue, margin: min_eigenvalue - a })
}
