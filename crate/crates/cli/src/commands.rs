use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use bemery_core::manifold::{bakry_emery_report, build_manifold, sharpness_row, ProfileSpec, DEFAULT_GRID_POINTS};
use bemery_core::perturbation::perturbation_coefficients;
use bemery_core::spectra::{
    basic_diameter_bound, drift_eigenvalue, drift_from_weber, improved_diameter_bound, neumann_drift_eigenvalue,
    weber_dirichlet_eigenvalue, DriftEigenQuery, WeberEigenQuery, DEFAULT_TOL,
};
use bemery_core::sturm_liouville::{fd_oracle, EigenSolution, SLProblem};
use bemery_core::SpectralError;
use rayon::prelude::*;

use crate::config::{finite, pick, positive, Config};
use crate::{verify, Cli, Command, Failure, SHARPNESS_DEFAULTS};

const MAX_TAYLOR_ORDER: usize = 16;
/// Shooting and grid values must agree this well (relative to `1 + |λ|`).
const CROSS_CHECK: f64 = 1e-6;

/// Fixed 12-significant-digit format for CSV cells.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Io(format!("cannot start worker threads: {e}")))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => match std::io::stdout().write_all(bytes) {
            // a closed pipe (`bemery figure1 | head`) is not an error
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io(format!("cannot write output: {e}"))),
            _ => Ok(()),
        },
    }
}

fn csv_bytes(header: &[&str], rows: &[Vec<f64>]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| num(x))).map_err(io)?;
    }
    w.into_inner().map_err(|e| Failure::Io(e.to_string()))
}

fn sweep<T, F>(jobs: usize, items: Vec<T>, f: F) -> Result<Vec<Vec<f64>>, Failure>
where
    T: Send + Sync,
    F: Fn(&T) -> bemery_core::Result<Vec<f64>> + Send + Sync,
{
    let rows = pool(jobs)?.install(|| items.par_iter().map(&f).collect::<bemery_core::Result<Vec<_>>>())?;
    Ok(rows)
}

fn cross_check(problem: &SLProblem, sol: &EigenSolution, report: &mut String) -> Result<(), Failure> {
    let fd = fd_oracle(problem, 512, 3)?;
    let diff = (sol.eigenvalue - fd.value).abs();
    writeln!(report, "fd_oracle\t{:.14e}", fd.value).unwrap();
    writeln!(report, "fd_error_estimate\t{:.3e}", fd.error_estimate).unwrap();
    writeln!(report, "residual\t{:.3e}", sol.residual).unwrap();
    writeln!(report, "method_difference\t{diff:.3e}").unwrap();
    if diff > CROSS_CHECK * (1.0 + sol.eigenvalue.abs()) {
        return Err(Failure::Solver(SpectralError::NoConvergence { iterations: sol.iterations, last_step: diff }));
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = Config::load(cli.config.as_deref())?;
    let tol = positive(cli.tol.or(cfg.tol).unwrap_or(DEFAULT_TOL), "tol")?;
    let jobs = cli.jobs.or(cfg.jobs).unwrap_or(0);
    let out = cli.out.or(cfg.out.clone());
    let out = out.as_deref();

    match cli.command {
        Command::EigDrift { a, d } => {
            let a = finite(pick(a, cfg.a, "a")?, "a")?;
            let d = positive(pick(d, cfg.d, "D")?, "D")?;
            let q = DriftEigenQuery::new(a, d).with_tol(tol);
            let sol = neumann_drift_eigenvalue(q)?;
            let mut report = String::new();
            writeln!(report, "a\t{a}\nD\t{d}\nlambda_bar\t{:.14e}", sol.eigenvalue).unwrap();
            writeln!(report, "via_weber\t{:.14e}", drift_from_weber(a, d)?).unwrap();
            cross_check(&q.problem(), &sol, &mut report)?;
            emit(out, report.as_bytes())
        }
        Command::EigWeber { b, d } => {
            let b = finite(pick(b, cfg.b, "b")?, "b")?;
            let d = positive(pick(d, cfg.d, "D")?, "D")?;
            let q = WeberEigenQuery::new(b, d).with_tol(tol);
            let sol = weber_dirichlet_eigenvalue(q)?;
            let mut report = String::new();
            writeln!(report, "b\t{b}\nD\t{d}\nlambda_hat\t{:.14e}", sol.eigenvalue).unwrap();
            cross_check(&q.problem(), &sol, &mut report)?;
            emit(out, report.as_bytes())
        }
        Command::Verify => {
            let results = pool(jobs)?.install(verify::run_all);
            let mut report = String::new();
            let mut failed = 0;
            for r in &results {
                let tag = if r.pass { "PASS" } else { "FAIL" };
                failed += usize::from(!r.pass);
                writeln!(report, "{tag} {}: {}", r.name, r.detail).unwrap();
            }
            writeln!(report, "{} of {} checks passed", results.len() - failed, results.len()).unwrap();
            emit(out, report.as_bytes())?;
            if failed > 0 {
                return Err(Failure::Verification(failed));
            }
            Ok(())
        }
        Command::Taylor { order } => {
            let order = pick(order, cfg.order, "order")?;
            if order > MAX_TAYLOR_ORDER {
                return Err(Failure::Usage(format!("--order {order} exceeds {MAX_TAYLOR_ORDER}")));
            }
            let coeffs = perturbation_coefficients(order)?;
            let mut report = String::from("k\texact\tdecimal\n");
            for (k, c) in coeffs.iter().enumerate() {
                writeln!(report, "{k}\t{c}\t{:.16e}", c.to_f64()).unwrap();
            }
            emit(out, report.as_bytes())
        }
        Command::Figure1 => {
            let grid: Vec<f64> = (0..=200).map(|i| 0.5 * i as f64).collect();
            let rows = sweep(jobs, grid, |&b| {
                let lambda = weber_dirichlet_eigenvalue(WeberEigenQuery::new(b, PI).with_tol(tol))?.eigenvalue;
                Ok(vec![b, lambda, 1.0, b.sqrt()])
            })?;
            emit(out, &csv_bytes(&["b", "lambda_hat", "bound_one", "bound_sqrt_b"], &rows)?)
        }
        Command::Figure2 => {
            let grid: Vec<f64> = (0..=200).map(|i| 0.05 * i as f64).collect();
            let rows = sweep(jobs, grid, |&a| {
                let lambda = neumann_drift_eigenvalue(DriftEigenQuery::new(a, PI).with_tol(tol))?.eigenvalue;
                Ok(vec![a, lambda, 0.5 * a + 1.0, a, 2.0 * a])
            })?;
            emit(out, &csv_bytes(&["a", "lambda_bar", "bound_linear", "bound_a", "line_2a"], &rows)?)
        }
        Command::Sharpness { n, a, d, r_list, delta_ratio, grid_points } => {
            let (n0, a0, d0, r0, ratio0) = SHARPNESS_DEFAULTS;
            let n = n.or(cfg.n).unwrap_or(n0);
            let a = finite(a.or(cfg.a).unwrap_or(a0), "a")?;
            let d = positive(d.or(cfg.d).unwrap_or(d0), "D")?;
            let r_list = r_list.or(cfg.r_list.clone()).unwrap_or_else(|| r0.to_vec());
            let ratio = positive(delta_ratio.or(cfg.delta_ratio).unwrap_or(ratio0), "delta-ratio")?;
            let grid_points = grid_points.or(cfg.grid_points).unwrap_or(DEFAULT_GRID_POINTS);
            if r_list.is_empty() {
                return Err(Failure::Usage("--r-list is empty".into()));
            }
            let specs = r_list
                .iter()
                .map(|&r| {
                    let spec = ProfileSpec::new(n, positive(r, "r-list")?, d, a)
                        .with_delta(ratio * r)
                        .with_grid_points(grid_points);
                    spec.validate()?;
                    Ok(spec)
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let rows = sweep(jobs, specs, |&spec| {
                let row = sharpness_row(spec)?;
                Ok(vec![
                    row.r,
                    row.delta,
                    row.min_rcf_margin,
                    row.diameter,
                    row.lambda_sym,
                    row.lower_sandwich,
                    row.upper_sandwich,
                ])
            })?;
            let header =
                ["r", "delta", "min_rcf_margin", "diameter", "lambda_sym", "lower_sandwich", "upper_sandwich"];
            emit(out, &csv_bytes(&header, &rows)?)
        }
        Command::Diameter { a } => {
            let a = positive(pick(a, cfg.a, "a")?, "a")?;
            let improved = improved_diameter_bound(a, tol.min(1e-10))?;
            let mut report = String::new();
            writeln!(report, "a\t{a}").unwrap();
            writeln!(report, "basic\t{:.14e}", basic_diameter_bound(a)).unwrap();
            writeln!(report, "improved\t{improved:.14e}").unwrap();
            writeln!(report, "lambda_bar_at_improved\t{:.14e}", drift_eigenvalue(a, improved)?).unwrap();
            emit(out, report.as_bytes())
        }
        Command::Profile { n, r, delta, d, a, grid_points } => {
            let n = pick(n, cfg.n, "n")?;
            let r = positive(pick(r, cfg.r, "r")?, "r")?;
            let d = positive(pick(d, cfg.d, "D")?, "D")?;
            let a = finite(pick(a, cfg.a, "a")?, "a")?;
            let mut spec = ProfileSpec::new(n, r, d, a);
            if let Some(delta) = delta.or(cfg.delta) {
                spec = spec.with_delta(delta);
            }
            if let Some(g) = grid_points.or(cfg.grid_points) {
                spec = spec.with_grid_points(g);
            }
            let m = build_manifold(spec)?;
            bakry_emery_report(&m, a)?;
            let rows: Vec<Vec<f64>> = m
                .table()
                .iter()
                .map(|row| {
                    let (radial, tangential) = m.rcf_eigenvalues(row.s);
                    vec![row.s, row.k, row.y, row.yprime, row.f, row.fprime, radial, tangential]
                })
                .collect();
            let header = ["s", "k", "y", "yprime", "f", "fprime", "rcf_radial", "rcf_tangential"];
            emit(out, &csv_bytes(&header, &rows)?)
        }
    }
}
