//! First eigenvalues of one-dimensional weighted Sturm–Liouville problems.

mod finite_difference;
mod problem;
mod shooting;

pub use finite_difference::{fd_eigenvalue_on_grid, fd_oracle, fd_oracle_eigenvalue, FdEstimate};
pub use problem::{Coefficient, EndCondition, Parity, Reduced, SLProblem};
pub use shooting::{boundary_mismatch, shoot_eigenvalue, SINGULAR_OFFSET};

use crate::error::{Result, SpectralError};

/// One point of a sampled eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub s: f64,
    pub u: f64,
    pub du: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Shooting,
    FiniteDifference,
}

/// An eigenvalue with its eigenfunction on the reduced interval.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub eigenvalue: f64,
    /// Samples on the reduced interval in increasing `s`.
    pub samples: Vec<Sample>,
    /// Largest ODE defect between samples, relative to `max |u|`.
    pub residual: f64,
    pub method: Method,
    pub grid_size: usize,
    pub bracket: (f64, f64),
    pub mismatch: f64,
    pub iterations: usize,
    parity: Parity,
    midpoint: f64,
    ddu: Vec<f64>,
}

fn hermite(h: f64, t: f64, y0: f64, d0: f64, y1: f64, d1: f64) -> (f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    let value = h00 * y0 + h * h10 * d0 + h01 * y1 + h * h11 * d1;
    let dh00 = 6.0 * t2 - 6.0 * t;
    let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    let dh01 = -6.0 * t2 + 6.0 * t;
    let dh11 = 3.0 * t2 - 2.0 * t;
    let slope = (dh00 * y0 + dh01 * y1) / h + dh10 * d0 + dh11 * d1;
    (value, slope)
}

impl EigenSolution {
    pub(crate) fn from_samples(
        problem: &SLProblem,
        eigenvalue: f64,
        samples: Vec<Sample>,
        method: Method,
        bracket: (f64, f64),
        mismatch: f64,
        iterations: usize,
    ) -> Self {
        let ddu: Vec<f64> = samples
            .iter()
            .map(|q| problem.rhs(eigenvalue, q.s, &[q.u, q.du])[1])
            .collect();
        let scale = samples.iter().fold(0.0f64, |m, q| m.max(q.u.abs())).max(f64::MIN_POSITIVE);
        let mut residual = 0.0f64;
        for (i, w) in samples.windows(2).enumerate() {
            let h = w[1].s - w[0].s;
            if h <= 0.0 {
                continue;
            }
            let sm = 0.5 * (w[0].s + w[1].s);
            let (u, _) = hermite(h, 0.5, w[0].u, w[0].du, w[1].u, w[1].du);
            let (du, d2u) = hermite(h, 0.5, w[0].du, ddu[i], w[1].du, ddu[i + 1]);
            let defect = d2u - problem.drift(sm) * du + (eigenvalue - problem.potential(sm)) * u;
            residual = residual.max(defect.abs() / scale);
        }
        Self {
            eigenvalue,
            grid_size: samples.len(),
            samples,
            residual,
            method,
            bracket,
            mismatch,
            iterations,
            parity: problem.parity(),
            midpoint: problem.midpoint(),
            ddu,
        }
    }

    /// A bare eigenvalue without eigenfunction, as produced by the grid oracle.
    pub(crate) fn from_grid(problem: &SLProblem, estimate: &FdEstimate) -> Self {
        Self {
            eigenvalue: estimate.value,
            samples: Vec::new(),
            residual: estimate.error_estimate,
            method: Method::FiniteDifference,
            grid_size: *estimate.grid_sizes.last().unwrap_or(&0),
            bracket: (estimate.value - estimate.error_estimate, estimate.value + estimate.error_estimate),
            mismatch: 0.0,
            iterations: estimate.raw.len(),
            parity: problem.parity(),
            midpoint: problem.midpoint(),
            ddu: Vec::new(),
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `(u, u')` at any point of the full interval, using the parity of the
    /// problem to extend the half-interval samples.
    pub fn eval(&self, s: f64) -> Option<(f64, f64)> {
        let (first, last) = (self.samples.first()?, self.samples.last()?);
        let (t, sign_u, sign_du) = match self.parity {
            Parity::General => (s, 1.0, 1.0),
            Parity::OddNeumann if s < self.midpoint => (2.0 * self.midpoint - s, -1.0, 1.0),
            Parity::EvenDirichlet if s < self.midpoint => (2.0 * self.midpoint - s, 1.0, -1.0),
            _ => (s, 1.0, 1.0),
        };
        let slack = 1e-12 * (last.s - first.s);
        if t < first.s - slack || t > last.s + slack {
            return None;
        }
        let t = t.clamp(first.s, last.s);
        let i = self.samples.partition_point(|q| q.s <= t).clamp(1, self.samples.len() - 1);
        let (a, b) = (self.samples[i - 1], self.samples[i]);
        let h = b.s - a.s;
        if h <= 0.0 {
            return Some((sign_u * b.u, sign_du * b.du));
        }
        let x = (t - a.s) / h;
        let (u, _) = hermite(h, x, a.u, a.du, b.u, b.du);
        let (du, _) = hermite(h, x, a.du, self.ddu[i - 1], b.du, self.ddu[i]);
        Some((sign_u * u, sign_du * du))
    }

    /// Sign changes of `u` strictly inside the reduced interval.
    ///
    /// Samples below `1e-6 · max |u|` are skipped: a decaying eigenfunction
    /// can sit at the noise level of the shot near a Dirichlet end.
    pub fn interior_zeros(&self) -> usize {
        let scale = self.samples.iter().fold(0.0f64, |m, q| m.max(q.u.abs()));
        let floor = 1e-6 * scale;
        let mut count = 0;
        let mut prev = 0.0f64;
        for q in &self.samples {
            if q.u.abs() <= floor {
                continue;
            }
            if prev != 0.0 && prev.signum() != q.u.signum() {
                count += 1;
            }
            prev = q.u;
        }
        count
    }
}

/// Grid sizes and tolerance for [`solve_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    pub grid_size: usize,
    pub refinements: usize,
    pub method: Method,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            grid_size: 512,
            refinements: 3,
            method: Method::Shooting,
        }
    }
}

/// Seeds a shooting bracket from the grid oracle and refines it.
pub fn solve(problem: &SLProblem, tol: f64) -> Result<EigenSolution> {
    solve_with(problem, SolveOptions { tol, ..SolveOptions::default() })
}

pub fn solve_with(problem: &SLProblem, opts: SolveOptions) -> Result<EigenSolution> {
    let estimate = fd_oracle(problem, opts.grid_size, opts.refinements)?;
    if opts.method == Method::FiniteDifference {
        return Ok(EigenSolution::from_grid(problem, &estimate));
    }
    let centre = estimate.value;
    let err = estimate.error_estimate.max(1e-7 * (1.0 + centre.abs()));
    let mut width = 10.0 * err;
    let mut last = None;
    for _ in 0..2 {
        match shoot_eigenvalue(problem, (centre - width, centre + width), opts.tol) {
            Err(e @ SpectralError::BracketEmpty { .. }) => {
                last = Some(e);
                width *= 100.0;
            }
            other => return other,
        }
    }
    Err(last.expect("loop ran"))
}
