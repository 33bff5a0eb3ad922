//! Acceptance suite: one PASS/FAIL line per criterion, each under its
//! runtime limit. Runs without the libtest harness so the lines are always
//! shown.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bemery_core::manifold::{
    build_manifold, heat_modulus_report, symmetric_neumann_eigenvalue, HeatOptions, InitialData, ProfileSpec,
};
use bemery_core::perturbation::{evaluate_series_extended, perturbation_coefficients, PiPoly, SeriesTarget};
use bemery_core::spectra::{
    drift_eigenvalue, improved_diameter_bound, neumann_drift_eigenvalue, weber_dirichlet_eigenvalue,
    weber_eigenvalue, weber_series_eigenvalue_pi, DriftEigenQuery, WeberEigenQuery,
};
use bemery_core::sturm_liouville::fd_oracle_eigenvalue;

type Outcome = Result<String, String>;

fn bemery(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bemery"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run bemery: {e}"))?;
    if !out.status.success() {
        return Err(format!("bemery {args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn csv_rows(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| e.to_string())?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        rows.push(record.iter().map(|x| x.parse::<f64>().map_err(|e| format!("{x}: {e}"))).collect::<Result<_, _>>()?);
    }
    Ok((header, rows))
}

fn list(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(" ")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: bemery_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn exact_coefficients() -> Outcome {
    let text = bemery(&["taylor", "--order", "4"])?;
    let expected = [
        "1",
        "pi^2/12 - 1/2",
        "pi^4/720 - 5*pi^2/48 + 7/8",
        "pi^6/30240 - pi^4/48 + 31*pi^2/32 - 121/16",
        "pi^8/362880 - pi^6/270 + 683*pi^4/1280 - 14573*pi^2/768 + 17771/128",
    ];
    let printed: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap_or("")).collect();
    ensure(printed == expected, || format!("printed {printed:?}"))?;
    let exact = [
        PiPoly::from_int(1),
        PiPoly::from_terms(&[(1, 1, 12), (0, -1, 2)]),
        PiPoly::from_terms(&[(2, 1, 720), (1, -5, 48), (0, 7, 8)]),
        PiPoly::from_terms(&[(3, 1, 30240), (2, -1, 48), (1, 31, 32), (0, -121, 16)]),
        PiPoly::from_terms(&[(4, 1, 362880), (3, -1, 270), (2, 683, 1280), (1, -14573, 768), (0, 17771, 128)]),
    ];
    ensure(lib(perturbation_coefficients(4))? == exact, || "rational coefficients differ".into())?;
    Ok("lambda_0..lambda_4 equal as exact rationals in pi^2".into())
}

fn trivial_spectra() -> Outcome {
    let drift = lib(neumann_drift_eigenvalue(DriftEigenQuery::new(0.0, PI)))?;
    let weber = lib(weber_dirichlet_eigenvalue(WeberEigenQuery::new(0.0, PI)))?;
    let fd_drift = lib(fd_oracle_eigenvalue(&DriftEigenQuery::new(0.0, PI).problem(), 512, 3))?;
    let fd_weber = lib(fd_oracle_eigenvalue(&WeberEigenQuery::new(0.0, PI).problem(), 512, 3))?;
    let shoot = (drift.eigenvalue - 1.0).abs().max((weber.eigenvalue - 1.0).abs());
    let grid = (fd_drift - 1.0).abs().max((fd_weber - 1.0).abs());
    ensure(shoot <= 1e-10 && grid <= 1e-6, || format!("shooting {shoot:.2e}, grid {grid:.2e}"))?;
    Ok(format!("shooting error {shoot:.1e}, grid error {grid:.1e}"))
}

fn identity_suite() -> Outcome {
    let mut worst = 0.0f64;
    for a in [0.5, 1.0, 2.0, 4.0] {
        for d in [1.0, PI, 5.0] {
            let lambda = lib(drift_eigenvalue(a, d))?;
            let shifted = 0.5 * a + lib(weber_eigenvalue(0.25 * a * a, d))?;
            let scaled = a * lib(drift_eigenvalue(1.0, a.sqrt() * d))?;
            worst = worst.max((lambda - shifted).abs()).max((lambda - scaled).abs());
        }
    }
    for d in [1.0, PI, 5.0] {
        worst = worst.max((lib(drift_eigenvalue(2.0, d))? - lib(weber_eigenvalue(1.0, d))? - 1.0).abs());
    }
    ensure(worst <= 1e-7, || format!("max deviation {worst:.2e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn bound_suite() -> Outcome {
    let mut slack = f64::INFINITY;
    for b in [0.1f64, 1.0, 4.0, 25.0, 100.0] {
        slack = slack.min(lib(weber_eigenvalue(b, PI))? - 1f64.max(b.sqrt()));
    }
    for a in [0.5, 1.0, 2.0, 4.0] {
        for d in [1.0f64, PI, 5.0] {
            slack = slack.min(lib(drift_eigenvalue(a, d))? - 0.5 * a - PI * PI / (d * d));
        }
    }
    ensure(slack >= -1e-9, || format!("min slack {slack:.3e}"))?;
    Ok(format!("min slack {slack:.3e}"))
}

fn series_accuracy() -> Outcome {
    let coeffs = lib(perturbation_coefficients(4))?;
    let bs = [0.01, 0.02, 0.05, 0.1];
    let mut errors = Vec::new();
    for b in bs {
        let exact = lib(weber_series_eigenvalue_pi(b, lib(weber_eigenvalue(b, PI))?))?;
        let series = lib(evaluate_series_extended(&coeffs, SeriesTarget::WeberPi { b }, 4))?;
        let err = f64::from(exact - series).abs();
        ensure(err <= 10.0 * b.powi(5), || format!("b = {b}: error {err:.3e} > 10 b^5"))?;
        errors.push(err);
    }
    let ratios = [errors[1] / errors[0], errors[3] / errors[2]];
    ensure(ratios.iter().all(|r| (24.0..=40.0).contains(r)), || format!("halving ratios {ratios:?}"))?;
    Ok(format!("errors {}, halving ratios {:.2} {:.2}", list(&errors), ratios[0], ratios[1]))
}

fn sharpness_sweep() -> Outcome {
    let text = bemery(&["sharpness", "--n", "3", "--a", "1", "--D", &PI.to_string(), "--r-list", "0.2,0.1,0.05", "--delta-ratio", "0.1"])?;
    let (header, rows) = csv_rows(&text)?;
    let want = ["r", "delta", "min_rcf_margin", "diameter", "lambda_sym", "lower_sandwich", "upper_sandwich"];
    ensure(header == want, || format!("header {header:?}"))?;
    ensure(rows.len() == 3, || format!("{} rows", rows.len()))?;
    let lambda_bar = lib(drift_eigenvalue(1.0, PI))?;
    let mut gaps = Vec::new();
    for row in &rows {
        let (r, delta, margin, diameter, lambda, _, _) = (row[0], row[1], row[2], row[3], row[4], row[5], row[6]);
        ensure(margin >= -1e-6, || format!("r = {r}: Rc_f margin {margin:.3e}"))?;
        let lower = lib(drift_eigenvalue(1.0, diameter))?;
        let upper = lib(drift_eigenvalue(1.0, PI - PI * r - 2.0 * delta))?;
        ensure(lower - 1e-5 <= lambda && lambda <= upper + 1e-5, || format!("r = {r}: {lower} <= {lambda} <= {upper} fails"))?;
        gaps.push(lambda - lambda_bar);
    }
    ensure(gaps[0] > gaps[1] && gaps[1] > gaps[2], || format!("gaps {gaps:?}"))?;
    Ok(format!("gaps to lambda_bar_(1,pi) along r = 0.2, 0.1, 0.05: {}", list(&gaps)))
}

fn sphere_oracle() -> Outcome {
    let d = PI;
    let r = d / PI;
    let m = lib(build_manifold(ProfileSpec::new(3, r, d, 0.0).with_delta(r / 100.0)))?;
    let lambda = lib(symmetric_neumann_eigenvalue(&m))?.eigenvalue;
    let rel = (lambda * r * r / 3.0 - 1.0).abs();
    ensure(rel <= 0.01, || format!("{lambda} vs {}", 3.0 / (r * r)))?;
    Ok(format!("{lambda:.8} vs 3/r^2 = {:.8} (relative {rel:.1e})", 3.0 / (r * r)))
}

fn diameter_bounds() -> Outcome {
    let text = bemery(&["diameter", "--a", "1"])?;
    let field = |key: &str| -> Result<f64, String> {
        text.lines()
            .find_map(|l| l.strip_prefix(key).and_then(|v| v.strip_prefix('\t')))
            .ok_or_else(|| format!("no {key} in output"))?
            .trim()
            .parse()
            .map_err(|e| format!("{key}: {e}"))
    };
    let basic = field("basic")?;
    let improved = field("improved")?;
    ensure((basic - PI * (2.0f64 / 3.0).sqrt()).abs() <= 1e-10, || format!("basic {basic}"))?;
    let at = lib(drift_eigenvalue(1.0, improved))?;
    ensure((at - 2.0).abs() <= 1e-8, || format!("lambda_bar(1, improved) = {at}"))?;
    ensure(improved > basic, || format!("improved {improved} <= basic {basic}"))?;
    let mut spread = 0.0f64;
    for a in [0.5f64, 2.0, 4.0] {
        spread = spread.max((lib(improved_diameter_bound(a, 1e-10))? * a.sqrt() - improved).abs());
    }
    ensure(spread <= 1e-6, || format!("improved(a) sqrt(a) spread {spread:.2e}"))?;
    Ok(format!("basic {basic:.10}, improved {improved:.10}, scaling spread {spread:.1e}"))
}

fn heat_modulus() -> Outcome {
    let m = lib(build_manifold(ProfileSpec::new(3, 0.1, PI, 1.0)))?;
    let opts = HeatOptions { cells: 256, dt: 1e-3, t_end: 1.0, initial: InitialData::GenericOdd };
    let rep = lib(heat_modulus_report(&m, opts))?;
    ensure(rep.violations == 0, || format!("{} violations, worst {:?}", rep.violations, rep.worst))?;
    Ok(format!("{} pair checks over {} steps, min slack {:.3e}", rep.checks, rep.steps, rep.min_slack))
}

fn figures() -> Outcome {
    let (h1, f1) = csv_rows(&bemery(&["figure1"])?)?;
    ensure(h1 == ["b", "lambda_hat", "bound_one", "bound_sqrt_b"], || format!("figure1 header {h1:?}"))?;
    ensure(f1.len() == 201 && f1[200][0] == 100.0, || "figure1 grid".into())?;
    ensure(f1.windows(2).all(|w| w[1][1] > w[0][1]), || "figure1 curve not increasing".into())?;
    ensure(f1.iter().all(|r| r[1] >= r[2].max(r[3]) - 1e-9), || "figure1 bound exceeded".into())?;

    let (h2, f2) = csv_rows(&bemery(&["figure2"])?)?;
    ensure(h2 == ["a", "lambda_bar", "bound_linear", "bound_a", "line_2a"], || format!("figure2 header {h2:?}"))?;
    ensure(f2.len() == 201 && (f2[200][0] - 10.0).abs() < 1e-12, || "figure2 grid".into())?;
    ensure(f2[0][1..] == [1.0, 1.0, 0.0, 0.0], || format!("figure2 first row {:?}", f2[0]))?;
    ensure(f2.windows(2).all(|w| w[1][1] > w[0][1]), || "figure2 curve not increasing".into())?;
    ensure(f2.iter().all(|r| r[1] >= r[2].max(r[3]) - 1e-9), || "figure2 bound exceeded".into())?;
    let signs: Vec<bool> = f2.iter().filter(|r| r[0] > 0.0).map(|r| r[1] > r[4]).collect();
    let crossings = signs.windows(2).filter(|w| w[0] != w[1]).count();
    ensure(crossings == 1, || format!("{crossings} crossings of 2a"))?;
    let at = f2.iter().find(|r| r[0] > 0.0 && r[1] <= r[4]).map(|r| r[0]).unwrap_or(f64::NAN);
    Ok(format!("monotone, bounds dominated, one crossing of 2a just below a = {at:.2}"))
}

type Criterion = (&'static str, fn() -> Outcome, u64);

const CRITERIA: [Criterion; 10] = [
    ("exact coefficients", exact_coefficients, 10),
    ("trivial spectra", trivial_spectra, 1),
    ("identity suite", identity_suite, 30),
    ("bound suite", bound_suite, 30),
    ("series accuracy", series_accuracy, 10),
    ("sharpness sweep", sharpness_sweep, 120),
    ("sphere oracle", sphere_oracle, 30),
    ("diameter bounds", diameter_bounds, 30),
    ("heat-flow modulus", heat_modulus, 120),
    ("figure reproduction", figures, 120),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, (name, check, limit)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => Err(format!("{detail}; over the {limit} s limit")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!("{tag} {:>2} {name} [{:.2} s / {limit} s]: {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
