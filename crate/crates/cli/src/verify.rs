//! The invariant suite behind `bemery verify`.

use std::f64::consts::PI;

use bemery_core::manifold::{
    bakry_emery_report, build_manifold, heat_modulus_report, rayleigh_upper_bound, sharpness_row, smoothing_function,
    symmetric_neumann_eigenvalue, HeatOptions, InitialData, ProfileSpec,
};
use bemery_core::perturbation::{ansatz, evaluate_series_extended, SeriesTarget};
use bemery_core::spectra::hypergeometric::kummer_characteristic;
use bemery_core::spectra::{
    basic_diameter_bound, drift_eigenvalue, improved_diameter_bound, lower_bounds_drift, neumann_drift_eigenvalue,
    weber_dirichlet_eigenvalue, weber_eigenvalue, weber_series_eigenvalue_pi, DriftEigenQuery, WeberEigenQuery,
};
use bemery_core::sturm_liouville::{fd_oracle, solve, Parity, SLProblem};
use bemery_core::Result;
use rayon::prelude::*;

pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("trivial spectra", trivial_spectra),
    ("shooting agrees with grid oracle", cross_method),
    ("singular endpoints", singular_endpoints),
    ("eigenfunction has no interior zero", eigenfunction_shape),
    ("drift equals shifted Weber", identity),
    ("drift scaling", drift_scaling),
    ("drift at a = 2", drift_at_two),
    ("Weber lower bounds", weber_bounds),
    ("drift lower bounds", drift_bounds),
    ("monotone in D", monotone_in_d),
    ("Kummer characteristic brackets", kummer_brackets),
    ("diameter bounds", diameter_bounds),
    ("exact series coefficients", exact_coefficients),
    ("series accuracy", series_accuracy),
    ("ansatz boundary values", ansatz_boundary),
    ("smoothing function", smoothing),
    ("profile invariants", profile_invariants),
    ("Bakry-Emery margins", rcf_margins),
    ("sphere limit", sphere_limit),
    ("eigenvalue sandwich", sandwich),
    ("Rayleigh quotient", rayleigh),
    ("table refinement", table_refinement),
    ("heat-flow modulus", heat_modulus),
];

pub fn run_all() -> Vec<CheckResult> {
    CHECKS
        .par_iter()
        .map(|(name, check)| match check() {
            Ok((pass, detail)) => CheckResult { name, pass, detail },
            Err(e) => CheckResult { name, pass: false, detail: format!("error: {e}") },
        })
        .collect()
}

fn list(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(" ")
}

fn worst<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn trivial_spectra() -> Result<(bool, String)> {
    let drift = drift_eigenvalue(0.0, PI)?;
    let weber = weber_eigenvalue(0.0, PI)?;
    let fd = fd_oracle(&DriftEigenQuery::new(0.0, PI).problem(), 512, 3)?.value;
    let err = worst([(drift - 1.0).abs(), (weber - 1.0).abs()]);
    Ok((err <= 1e-10 && (fd - 1.0).abs() <= 1e-6, format!("shooting {err:.1e}, grid {:.1e}", (fd - 1.0).abs())))
}

fn cross_method() -> Result<(bool, String)> {
    let mut err = 0.0f64;
    for (b, d) in [(1.0, PI), (4.0, 2.0), (25.0, 5.0)] {
        let q = WeberEigenQuery::new(b, d);
        let sol = weber_dirichlet_eigenvalue(q)?;
        let fd = fd_oracle(&q.problem(), 512, 3)?.value;
        err = err.max((sol.eigenvalue - fd).abs() / (1.0 + fd));
    }
    Ok((err <= 1e-6, format!("max relative difference {err:.1e}")))
}

fn singular_endpoints() -> Result<(bool, String)> {
    // unit 2-sphere, rotationally symmetric modes: first nonzero eigenvalue 2
    let p = SLProblem::new(0.0, PI, Parity::General)
        .with_drift(|s: f64| -s.cos() / s.sin())
        .with_weight(f64::sin)
        .with_singular_endpoints(true, true);
    let lambda = solve(&p, 1e-11)?.eigenvalue;
    Ok(((lambda - 2.0).abs() <= 1e-8, format!("sphere {lambda:.12}")))
}

fn eigenfunction_shape() -> Result<(bool, String)> {
    let sol = neumann_drift_eigenvalue(DriftEigenQuery::new(2.0, 5.0))?;
    let zeros = sol.interior_zeros();
    Ok((zeros == 0 && sol.residual <= 1e-6 * (1.0 + sol.eigenvalue), format!("{zeros} zeros, residual {:.1e}", sol.residual)))
}

fn identity() -> Result<(bool, String)> {
    let mut err = 0.0f64;
    for a in [-2.0, 0.5, 1.0, 2.0, 4.0] {
        for d in [1.0, PI, 5.0] {
            err = err.max((drift_eigenvalue(a, d)? - 0.5 * a - weber_eigenvalue(0.25 * a * a, d)?).abs());
        }
    }
    Ok((err <= 1e-7, format!("max difference {err:.1e}")))
}

fn drift_scaling() -> Result<(bool, String)> {
    let mut err = 0.0f64;
    for a in [0.5, 1.0, 2.0, 4.0] {
        for d in [1.0, PI, 5.0] {
            err = err.max((drift_eigenvalue(a, d)? - a * drift_eigenvalue(1.0, a.sqrt() * d)?).abs());
        }
    }
    Ok((err <= 1e-7, format!("max difference {err:.1e}")))
}

fn drift_at_two() -> Result<(bool, String)> {
    let mut err = 0.0f64;
    for d in [1.0, PI, 5.0] {
        err = err.max((drift_eigenvalue(2.0, d)? - weber_eigenvalue(1.0, d)? - 1.0).abs());
    }
    Ok((err <= 1e-7, format!("max difference {err:.1e}")))
}

fn weber_bounds() -> Result<(bool, String)> {
    let mut slack = f64::INFINITY;
    for b in [0.1f64, 1.0, 4.0, 25.0, 100.0] {
        slack = slack.min(weber_eigenvalue(b, PI)? - 1f64.max(b.sqrt()));
    }
    Ok((slack >= -1e-9, format!("min slack {slack:.3e}")))
}

fn drift_bounds() -> Result<(bool, String)> {
    let mut ok = true;
    for a in [0.5, 1.0, 2.0, 4.0] {
        for d in [1.0, PI, 5.0] {
            ok &= lower_bounds_drift(a, d, 1e-9)?.holds();
        }
    }
    Ok((ok, "a, pi^2/D^2 and a/2 + pi^2/D^2".into()))
}

fn monotone_in_d() -> Result<(bool, String)> {
    let ds = [0.5, 1.0, 2.0, PI, 5.0];
    let mut ok = true;
    for a in [-1.0, 0.0, 1.0, 4.0] {
        let values = ds.iter().map(|&d| drift_eigenvalue(a, d)).collect::<Result<Vec<_>>>()?;
        ok &= values.windows(2).all(|w| w[1] < w[0]);
    }
    for b in [0.0, 1.0, 25.0] {
        let values = ds.iter().map(|&d| weber_eigenvalue(b, d)).collect::<Result<Vec<_>>>()?;
        ok &= values.windows(2).all(|w| w[1] < w[0]);
    }
    Ok((ok, "decreasing in D".into()))
}

fn kummer_brackets() -> Result<(bool, String)> {
    let lambda = weber_eigenvalue(1.0, 3.0)?;
    let lo = kummer_characteristic(lambda - 1e-6, 1.0, 3.0)?;
    let hi = kummer_characteristic(lambda + 1e-6, 1.0, 3.0)?;
    Ok((lo * hi < 0.0, format!("sign change around {lambda:.10}")))
}

fn diameter_bounds() -> Result<(bool, String)> {
    let basic = basic_diameter_bound(1.0);
    let improved = improved_diameter_bound(1.0, 1e-10)?;
    let at = drift_eigenvalue(1.0, improved)?;
    let scaled = [0.5, 2.0, 4.0]
        .iter()
        .map(|&a| improved_diameter_bound(a, 1e-10).map(|d| (d * a.sqrt() - improved).abs()))
        .collect::<Result<Vec<_>>>()?;
    let spread = worst(scaled);
    let ok = (basic - PI * (2.0f64 / 3.0).sqrt()).abs() <= 1e-10
        && (at - 2.0).abs() <= 1e-8
        && spread <= 1e-6
        && improved > basic;
    Ok((ok, format!("basic {basic:.10}, improved {improved:.10}, scaling spread {spread:.1e}")))
}

fn exact_coefficients() -> Result<(bool, String)> {
    let st = ansatz(4)?;
    let shown: Vec<String> = st.lambdas.iter().map(ToString::to_string).collect();
    let expected = [
        "1",
        "pi^2/12 - 1/2",
        "pi^4/720 - 5*pi^2/48 + 7/8",
        "pi^6/30240 - pi^4/48 + 31*pi^2/32 - 121/16",
        "pi^8/362880 - pi^6/270 + 683*pi^4/1280 - 14573*pi^2/768 + 17771/128",
    ];
    Ok((shown == expected, shown.join("; ")))
}

fn series_accuracy() -> Result<(bool, String)> {
    let coeffs = ansatz(4)?.lambdas;
    let bs = [0.01, 0.02, 0.05, 0.1];
    let mut errors = Vec::new();
    let mut ok = true;
    for b in bs {
        let exact = weber_series_eigenvalue_pi(b, weber_eigenvalue(b, PI)?)?;
        let series = evaluate_series_extended(&coeffs, SeriesTarget::WeberPi { b }, 4)?;
        let err = f64::from(exact - series).abs();
        ok &= err <= 10.0 * b.powi(5);
        errors.push(err);
    }
    let r1 = errors[1] / errors[0];
    ok &= (24.0..=40.0).contains(&r1);
    Ok((ok, format!("errors {}, ratio {r1:.2}", list(&errors))))
}

fn ansatz_boundary() -> Result<(bool, String)> {
    let st = ansatz(6)?;
    let ok = (1..=6).map(|k| st.boundary_value(k)).collect::<Result<Vec<_>>>()?.iter().all(|v| v.is_zero());
    let ratio = st.max_residual(4, 0.01, 200)? / st.max_residual(4, 0.005, 200)?;
    Ok((ok && (25.0..=40.0).contains(&ratio), format!("residual ratio under halving {ratio:.2}")))
}

fn smoothing() -> Result<(bool, String)> {
    let mut ok = smoothing_function(-1.0) == 1.0 && smoothing_function(1.0) == 0.0 && smoothing_function(0.0) == 0.5;
    for i in 0..=200 {
        let s = -2.0 + 0.02 * i as f64;
        ok &= (smoothing_function(s) + smoothing_function(-s) - 1.0).abs() <= 2.0 * f64::EPSILON;
        ok &= smoothing_function(s + 0.02) <= smoothing_function(s);
    }
    Ok((ok, "step, symmetry, monotone".into()))
}

fn profile_invariants() -> Result<(bool, String)> {
    let m = build_manifold(ProfileSpec::new(3, 0.1, PI, 1.0))?;
    let d = m.d();
    let mut sym = 0.0f64;
    for i in 0..=200 {
        let s = 0.5 * d * i as f64 / 200.0;
        sym = sym.max(worst([
            (m.k(s) - m.k(d - s)).abs(),
            (m.fpp(s) - m.fpp(d - s)).abs(),
            (m.y(s) - m.y(d - s)).abs(),
            (m.yp(s) + m.yp(d - s)).abs(),
            (m.fp(s) + m.fp(d - s)).abs(),
        ]));
    }
    let ok = m.y(0.0) == 0.0
        && m.yp(0.0) == 1.0
        && m.fp(0.0) == 0.0
        && m.fp(0.5 * d).abs() <= 1e-9
        && m.y(d).abs() <= 1e-12
        && sym <= 1e-12
        && m.diameter == d;
    Ok((ok, format!("reflection error {sym:.1e}, f'(D/2) = {:.1e}", m.fp(0.5 * d))))
}

fn rcf_margins() -> Result<(bool, String)> {
    let mut margins = Vec::new();
    for r in [0.2, 0.1, 0.05] {
        margins.push(bakry_emery_report(&build_manifold(ProfileSpec::new(3, r, PI, 1.0))?, 1.0)?.margin);
    }
    let surface_neg = bakry_emery_report(&build_manifold(ProfileSpec::new(2, 0.1, PI, -1.0))?, -1.0)?.margin;
    let surface_pos = bakry_emery_report(&build_manifold(ProfileSpec::new(2, 0.1, PI, 1.0))?, 1.0)?.margin;
    let ok = margins.iter().all(|&m| m >= -1e-6) && surface_neg >= -1e-6 && surface_pos < -1e-6;
    Ok((ok, format!("n=3 {}, n=2 a=-1 {surface_neg:.1e}, n=2 a=1 {surface_pos:.3} (must fail)", list(&margins))))
}

fn sphere_limit() -> Result<(bool, String)> {
    let r = 1.0;
    let m = build_manifold(ProfileSpec::new(3, r, PI * r, 0.0).with_delta(r / 100.0))?;
    let lambda = symmetric_neumann_eigenvalue(&m)?.eigenvalue;
    Ok(((lambda / 3.0 - 1.0).abs() <= 0.01, format!("{lambda:.8} vs 3")))
}

fn sandwich() -> Result<(bool, String)> {
    let lambda_bar = drift_eigenvalue(1.0, PI)?;
    let mut gaps = Vec::new();
    let mut ok = true;
    for r in [0.2, 0.1, 0.05] {
        let row = sharpness_row(ProfileSpec::new(3, r, PI, 1.0))?;
        ok &= row.sandwich_holds(1e-5);
        gaps.push(row.lambda_sym - lambda_bar);
    }
    ok &= gaps.windows(2).all(|w| w[1] < w[0]);
    Ok((ok, format!("gaps {}", list(&gaps))))
}

fn rayleigh() -> Result<(bool, String)> {
    let m = build_manifold(ProfileSpec::new(3, 0.1, PI, 1.0))?;
    let bound = rayleigh_upper_bound(&m)?;
    let lambda = symmetric_neumann_eigenvalue(&m)?.eigenvalue;
    let ok = bound.quotient <= bound.lambda_bar_inner && bound.quotient >= lambda - 1e-8;
    Ok((ok, format!("{lambda:.8} <= {:.8} <= {:.8}", bound.quotient, bound.lambda_bar_inner)))
}

fn table_refinement() -> Result<(bool, String)> {
    let spec = ProfileSpec::new(3, 0.1, PI, 1.0);
    let coarse = symmetric_neumann_eigenvalue(&build_manifold(spec)?)?.eigenvalue;
    let fine = symmetric_neumann_eigenvalue(&build_manifold(spec.with_grid_points(8192))?)?.eigenvalue;
    let diff = (coarse - fine).abs();
    Ok((diff <= 1e-6, format!("change {diff:.1e}")))
}

fn heat_modulus() -> Result<(bool, String)> {
    let m = build_manifold(ProfileSpec::new(3, 0.1, PI, 1.0))?;
    let mut ok = true;
    let mut detail = Vec::new();
    for initial in [InitialData::GenericOdd, InitialData::Eigenfunction] {
        let rep = heat_modulus_report(&m, HeatOptions { initial, ..HeatOptions::default() })?;
        ok &= rep.violations == 0;
        detail.push(format!("{initial:?}: {} violations, min slack {:.2e}", rep.violations, rep.min_slack));
    }
    Ok((ok, detail.join("; ")))
}
