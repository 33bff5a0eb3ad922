//! Cell-centred finite-volume oracle for the self-adjoint form.
//!
//! Unknowns live at cell centres, fluxes at cell faces, so the weight is
//! only ever sampled strictly inside the interval or at a face that carries
//! a Dirichlet condition. A vanishing endpoint weight is never evaluated.

use super::problem::{EndCondition, SLProblem};
use crate::error::{Result, SpectralError};
use crate::tridiagonal;

/// Richardson-extrapolated eigenvalue and the raw grid sequence behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct FdEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub raw: Vec<f64>,
    pub grid_sizes: Vec<usize>,
    /// `log2` of successive difference ratios of the raw estimates.
    pub observed_order: f64,
}

/// Symmetric tridiagonal standard form `B^{-1/2} A B^{-1/2}` on `cells` cells.
fn assemble(problem: &SLProblem, cells: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let r = problem.reduced();
    let h = (r.hi - r.lo) / cells as f64;
    let mut mass = Vec::with_capacity(cells);
    let mut diag = vec![0.0; cells];
    for (i, d) in diag.iter_mut().enumerate() {
        let s = r.lo + (i as f64 + 0.5) * h;
        let w = problem.weight(s);
        if !(w > 0.0 && w.is_finite()) {
            return Err(SpectralError::DegenerateWeight { at: s });
        }
        mass.push(w * h);
        *d = problem.potential(s) * w * h;
    }
    let mut off = Vec::with_capacity(cells.saturating_sub(1));
    for j in 1..cells {
        let face = r.lo + j as f64 * h;
        let w = problem.weight(face);
        if !(w > 0.0 && w.is_finite()) {
            return Err(SpectralError::DegenerateWeight { at: face });
        }
        let c = w / h;
        diag[j - 1] += c;
        diag[j] += c;
        off.push(-c);
    }
    // Dirichlet faces sit half a cell from the nearest unknown.
    if r.left == EndCondition::Dirichlet {
        diag[0] += 2.0 * problem.weight(r.lo) / h;
    }
    if r.right == EndCondition::Dirichlet {
        diag[cells - 1] += 2.0 * problem.weight(r.hi) / h;
    }
    for (i, d) in diag.iter_mut().enumerate() {
        *d /= mass[i];
    }
    for (j, e) in off.iter_mut().enumerate() {
        *e /= (mass[j] * mass[j + 1]).sqrt();
    }
    Ok((diag, off))
}

/// Unextrapolated eigenvalue on a single grid.
pub fn fd_eigenvalue_on_grid(problem: &SLProblem, cells: usize) -> Result<f64> {
    let (diag, off) = assemble(problem, cells)?;
    let index = problem.reduced().index;
    tridiagonal::kth_eigenvalue(&diag, &off, index).ok_or_else(|| {
        SpectralError::InvalidProblem(format!("grid of {cells} cells has no eigenvalue {index}"))
    })
}

/// Estimates on `grid_size · 2^j` cells for `j = 0..=refinements`, combined
/// by Richardson extrapolation in powers of `h²`.
pub fn fd_oracle(problem: &SLProblem, grid_size: usize, refinements: usize) -> Result<FdEstimate> {
    if grid_size < 16 {
        return Err(SpectralError::InvalidProblem(format!("grid_size {grid_size} < 16")));
    }
    if refinements < 1 {
        return Err(SpectralError::InvalidProblem("at least one refinement is required".into()));
    }
    problem.validate()?;
    let grid_sizes: Vec<usize> = (0..=refinements).map(|j| grid_size << j).collect();
    let raw = grid_sizes
        .iter()
        .map(|&n| fd_eigenvalue_on_grid(problem, n))
        .collect::<Result<Vec<_>>>()?;

    let diffs: Vec<f64> = raw.windows(2).map(|w| w[1] - w[0]).collect();
    let noise = 1e-13 * raw.last().unwrap().abs().max(1.0);
    for pair in diffs.windows(2) {
        if pair[1].abs() <= noise {
            continue;
        }
        if pair[0].signum() != pair[1].signum() || pair[1].abs() >= pair[0].abs() {
            return Err(SpectralError::GridTooCoarse { estimates: raw });
        }
    }
    let observed_order = if diffs.len() >= 2 && diffs[1] != 0.0 {
        (diffs[0] / diffs[1]).abs().log2()
    } else {
        f64::NAN
    };

    // Romberg-style table; row j holds extrapolations using grids 0..=j.
    let mut prev: Vec<f64> = vec![raw[0]];
    for (j, &e) in raw.iter().enumerate().skip(1) {
        let mut row = vec![e];
        for k in 1..=j {
            let factor = 4f64.powi(k as i32);
            let v = row[k - 1] + (row[k - 1] - prev[k - 1]) / (factor - 1.0);
            row.push(v);
        }
        if j == raw.len() - 1 {
            let value = row[j];
            let error_estimate = (value - row[j - 1]).abs().max((value - prev[j - 1]).abs());
            return Ok(FdEstimate {
                value,
                error_estimate,
                raw,
                grid_sizes,
                observed_order,
            });
        }
        prev = row;
    }
    unreachable!("refinements >= 1 guarantees at least two grids")
}

/// The extrapolated eigenvalue alone.
pub fn fd_oracle_eigenvalue(problem: &SLProblem, grid_size: usize, refinements: usize) -> Result<f64> {
    fd_oracle(problem, grid_size, refinements).map(|e| e.value)
}
