use std::fmt;
use std::sync::Arc;

use crate::error::{Result, SpectralError};

/// A real coefficient function of the independent variable.
pub type Coefficient = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Which eigenvalue branch is targeted, and how the interval is reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Odd eigenfunction with Neumann (or regular) far ends; solved on the
    /// right half with `u(mid) = 0`, `u'(mid) = 1`.
    OddNeumann,
    /// Even eigenfunction with Dirichlet ends; solved on the right half with
    /// `u(mid) = 1`, `u'(mid) = 0`.
    EvenDirichlet,
    /// Natural boundary conditions at both ends of the full interval; the
    /// target is the first nonzero eigenvalue.
    General,
}

/// Boundary condition at one end of the reduced interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndCondition {
    Dirichlet,
    Neumann,
    /// The weight vanishes here; only the bounded solution is admitted.
    Regular,
}

/// `u'' - drift(s) u' + (λ - potential(s)) u = 0` on `[s_lo, s_hi]`, with
/// self-adjoint form `(w u')' + (λ - V) w u = 0`, where `w'/w = -drift`.
#[derive(Clone)]
pub struct SLProblem {
    drift: Coefficient,
    potential: Coefficient,
    weight: Coefficient,
    interval: (f64, f64),
    parity: Parity,
    singular: [bool; 2],
}

impl fmt::Debug for SLProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SLProblem")
            .field("interval", &self.interval)
            .field("parity", &self.parity)
            .field("singular", &self.singular)
            .finish_non_exhaustive()
    }
}

/// The half (or full) interval actually integrated, with its end conditions
/// and the index of the targeted eigenvalue within that reduced problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduced {
    pub lo: f64,
    pub hi: f64,
    pub left: EndCondition,
    pub right: EndCondition,
    pub index: usize,
}

impl SLProblem {
    /// A problem with zero drift, zero potential and unit weight.
    pub fn new(s_lo: f64, s_hi: f64, parity: Parity) -> Self {
        Self {
            drift: Arc::new(|_| 0.0),
            potential: Arc::new(|_| 0.0),
            weight: Arc::new(|_| 1.0),
            interval: (s_lo, s_hi),
            parity,
            singular: [false, false],
        }
    }

    /// Symmetric interval `[-d/2, d/2]`.
    pub fn symmetric(d: f64, parity: Parity) -> Self {
        Self::new(-0.5 * d, 0.5 * d, parity)
    }

    pub fn with_drift(mut self, drift: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.drift = Arc::new(drift);
        self
    }

    pub fn with_potential(mut self, v: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.potential = Arc::new(v);
        self
    }

    pub fn with_weight(mut self, w: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.weight = Arc::new(w);
        self
    }

    pub fn with_singular_endpoints(mut self, lo: bool, hi: bool) -> Self {
        self.singular = [lo, hi];
        self
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.interval.0 + self.interval.1)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn singular_endpoints(&self) -> [bool; 2] {
        self.singular
    }

    pub fn drift(&self, s: f64) -> f64 {
        (self.drift)(s)
    }

    pub fn potential(&self, s: f64) -> f64 {
        (self.potential)(s)
    }

    pub fn weight(&self, s: f64) -> f64 {
        (self.weight)(s)
    }

    /// Right-hand side of the first-order system `(u, u')' = (u', drift u' - (λ - V) u)`.
    #[inline]
    pub fn rhs(&self, lambda: f64, s: f64, y: &[f64; 2]) -> [f64; 2] {
        [y[1], self.drift(s) * y[1] - (lambda - self.potential(s)) * y[0]]
    }

    pub fn reduced(&self) -> Reduced {
        let (lo, hi) = self.interval;
        let mid = self.midpoint();
        let far = |singular: bool, otherwise: EndCondition| {
            if singular {
                EndCondition::Regular
            } else {
                otherwise
            }
        };
        match self.parity {
            Parity::OddNeumann => Reduced {
                lo: mid,
                hi,
                left: EndCondition::Dirichlet,
                right: far(self.singular[1], EndCondition::Neumann),
                index: 0,
            },
            Parity::EvenDirichlet => Reduced {
                lo: mid,
                hi,
                left: EndCondition::Neumann,
                right: EndCondition::Dirichlet,
                index: 0,
            },
            Parity::General => Reduced {
                lo,
                hi,
                left: far(self.singular[0], EndCondition::Neumann),
                right: far(self.singular[1], EndCondition::Neumann),
                index: 1,
            },
        }
    }

    /// Checks the structural invariants on a probe grid.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.interval;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(SpectralError::InvalidProblem(format!(
                "interval [{lo}, {hi}] is empty or not finite"
            )));
        }
        if self.parity == Parity::EvenDirichlet && self.singular[1] {
            return Err(SpectralError::InvalidProblem(
                "Dirichlet condition at a singular endpoint".into(),
            ));
        }
        let len = hi - lo;
        let mid = self.midpoint();
        const PROBES: usize = 17;
        for i in 1..PROBES {
            let s = lo + len * i as f64 / PROBES as f64;
            let w = self.weight(s);
            if !(w > 0.0 && w.is_finite()) {
                return Err(SpectralError::DegenerateWeight { at: s });
            }
            // drift must equal -w'/w
            let h = 1e-5 * len;
            let dlog = ((self.weight(s + h)).ln() - (self.weight(s - h)).ln()) / (2.0 * h);
            let drift = self.drift(s);
            if (drift + dlog).abs() > 1e-4 * (1.0 + drift.abs()) {
                return Err(SpectralError::InvalidProblem(format!(
                    "drift {drift} at s = {s} is inconsistent with the weight (-w'/w = {})",
                    -dlog
                )));
            }
            if self.parity != Parity::General {
                let t = s - mid;
                let mirror = mid - t;
                let tol = |x: f64| 1e-9 * (1.0 + x.abs());
                let (d1, d2) = (self.drift(s), self.drift(mirror));
                let (v1, v2) = (self.potential(s), self.potential(mirror));
                let (w1, w2) = (self.weight(s), self.weight(mirror));
                if (d1 + d2).abs() > tol(d1) || (v1 - v2).abs() > tol(v1) || (w1 - w2).abs() > 1e-9 * w1 {
                    return Err(SpectralError::InvalidProblem(format!(
                        "coefficients are not symmetric about s = {mid} (probe s = {s})"
                    )));
                }
            }
        }
        Ok(())
    }
}
