//! Shooting from the symmetry point (or from a singular endpoint) with an
//! adaptive Runge–Kutta integrator and Brent iteration on the mismatch.

use super::problem::{EndCondition, Reduced, SLProblem};
use super::{EigenSolution, Method, Sample};
use crate::error::{Result, SpectralError};
use crate::ode::Dopri5;
use crate::roots;

/// Relative offset from a singular endpoint where integration starts.
pub const SINGULAR_OFFSET: f64 = 1e-6;

const SAMPLES_PER_INTERVAL: f64 = 2048.0;
const MAX_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy)]
enum Plan {
    /// Integrate from the left start to the right end.
    Forward,
    /// Integrate from the right start to the left end.
    Backward,
    /// Integrate from both ends to the midpoint and compare.
    Matched(f64),
}

struct Shooter<'a> {
    problem: &'a SLProblem,
    reduced: Reduced,
    plan: Plan,
    left: (f64, [f64; 2]),
    right: (f64, [f64; 2]),
    rk: Dopri5,
}

impl<'a> Shooter<'a> {
    fn new(problem: &'a SLProblem, tol: f64) -> Self {
        let reduced = problem.reduced();
        let (lo, hi) = problem.interval();
        let eps = SINGULAR_OFFSET * (hi - lo);
        let left = match reduced.left {
            EndCondition::Dirichlet => (reduced.lo, [0.0, 1.0]),
            EndCondition::Neumann => (reduced.lo, [1.0, 0.0]),
            EndCondition::Regular => (reduced.lo + eps, [1.0, 0.0]),
        };
        let right = match reduced.right {
            EndCondition::Dirichlet => (reduced.hi, [0.0, -1.0]),
            EndCondition::Neumann => (reduced.hi, [1.0, 0.0]),
            EndCondition::Regular => (reduced.hi - eps, [1.0, 0.0]),
        };
        let plan = match (reduced.left, reduced.right) {
            (EndCondition::Regular, EndCondition::Regular) => Plan::Matched(0.5 * (reduced.lo + reduced.hi)),
            (_, EndCondition::Regular) => Plan::Backward,
            // an even bound state decays towards the Dirichlet end, so only
            // the backward shot is stable when the potential is deep
            (EndCondition::Neumann, EndCondition::Dirichlet) => Plan::Backward,
            _ => Plan::Forward,
        };
        let rtol = (tol / 100.0).max(1e-14);
        Self {
            problem,
            reduced,
            plan,
            left,
            right,
            rk: Dopri5::with_tolerance(rtol, rtol * 1e-3),
        }
    }

    fn run(&self, lambda: f64, from: (f64, [f64; 2]), to: f64, samples: Option<&mut Vec<Sample>>) -> Result<[f64; 2]> {
        let p = self.problem;
        let f = |s: f64, y: &[f64; 2]| p.rhs(lambda, s, y);
        match samples {
            None => self.rk.solve(f, from.0, from.1, to),
            Some(out) => {
                let rk = self.rk.max_step((self.reduced.hi - self.reduced.lo) / SAMPLES_PER_INTERVAL);
                rk.integrate(f, from.0, from.1, to, |s, y, _| out.push(Sample { s, u: y[0], du: y[1] }))
            }
        }
    }

    fn apply(cond: EndCondition, y: &[f64; 2]) -> f64 {
        match cond {
            EndCondition::Dirichlet => y[0],
            EndCondition::Neumann | EndCondition::Regular => y[1],
        }
    }

    fn mismatch(&self, lambda: f64) -> Result<f64> {
        match self.plan {
            Plan::Forward => {
                let y = self.run(lambda, self.left, self.reduced.hi, None)?;
                Ok(Self::apply(self.reduced.right, &y))
            }
            Plan::Backward => {
                let y = self.run(lambda, self.right, self.reduced.lo, None)?;
                Ok(Self::apply(self.reduced.left, &y))
            }
            Plan::Matched(m) => {
                let yl = self.run(lambda, self.left, m, None)?;
                let yr = self.run(lambda, self.right, m, None)?;
                Ok(yl[0] * yr[1] - yl[1] * yr[0])
            }
        }
    }

    /// Eigenfunction samples in increasing `s`, normalised per parity.
    fn samples(&self, lambda: f64) -> Result<Vec<Sample>> {
        let mut out = Vec::new();
        match self.plan {
            Plan::Forward => {
                self.run(lambda, self.left, self.reduced.hi, Some(&mut out))?;
            }
            Plan::Backward => {
                self.run(lambda, self.right, self.reduced.lo, Some(&mut out))?;
                out.reverse();
            }
            Plan::Matched(m) => {
                let mut left = Vec::new();
                let mut right = Vec::new();
                let yl = self.run(lambda, self.left, m, Some(&mut left))?;
                let yr = self.run(lambda, self.right, m, Some(&mut right))?;
                let scale = if yr[0].abs() >= yr[1].abs() * 1e-3 { yl[0] / yr[0] } else { yl[1] / yr[1] };
                right.reverse();
                out = left;
                out.extend(right.into_iter().skip(1).map(|q| Sample { s: q.s, u: q.u * scale, du: q.du * scale }));
            }
        }
        // OddNeumann: u'(mid) = 1; otherwise u(first sample) = 1.
        let first = out[0];
        let norm = match self.reduced.left {
            EndCondition::Dirichlet => first.du,
            _ => first.u,
        };
        if norm != 0.0 && norm.is_finite() {
            for q in &mut out {
                q.u /= norm;
                q.du /= norm;
            }
        }
        Ok(out)
    }
}

/// Boundary mismatch of the shot solution at trial value `lambda`.
pub fn boundary_mismatch(problem: &SLProblem, lambda: f64, tol: f64) -> Result<f64> {
    Shooter::new(problem, tol).mismatch(lambda)
}

/// Locates the eigenvalue inside `bracket` to absolute accuracy `tol`.
pub fn shoot_eigenvalue(problem: &SLProblem, bracket: (f64, f64), tol: f64) -> Result<EigenSolution> {
    if !(tol > 0.0) {
        return Err(SpectralError::InvalidProblem(format!("tolerance {tol} must be positive")));
    }
    problem.validate()?;
    let shooter = Shooter::new(problem, tol);
    let (lo, hi) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    let f_lo = shooter.mismatch(lo)?;
    let f_hi = shooter.mismatch(hi)?;
    let (lambda, iterations) = roots::brent(|x| shooter.mismatch(x), lo, hi, f_lo, f_hi, tol, 3, MAX_ITERATIONS)?;
    let mismatch = shooter.mismatch(lambda)?;
    let samples = shooter.samples(lambda)?;
    let solution = EigenSolution::from_samples(problem, lambda, samples, Method::Shooting, (lo, hi), mismatch, iterations);
    let expected = shooter.reduced.index;
    let found = solution.interior_zeros();
    if found != expected {
        return Err(SpectralError::WrongBranch { found, expected });
    }
    Ok(solution)
}
