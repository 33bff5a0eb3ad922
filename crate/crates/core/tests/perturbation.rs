use bemery_core::perturbation::{
    ansatz, evaluate_series, evaluate_series_extended, perturbation_coefficients, PiPoly, SeriesTarget,
};
use bemery_core::spectra::{drift_eigenvalue, weber_series_eigenvalue_pi};
use std::f64::consts::PI;

fn expected() -> Vec<PiPoly> {
    vec![
        PiPoly::from_int(1),
        PiPoly::from_terms(&[(1, 1, 12), (0, -1, 2)]),
        PiPoly::from_terms(&[(2, 1, 720), (1, -5, 48), (0, 7, 8)]),
        PiPoly::from_terms(&[(3, 1, 30240), (2, -1, 48), (1, 31, 32), (0, -121, 16)]),
        PiPoly::from_terms(&[(4, 1, 362880), (3, -1, 270), (2, 683, 1280), (1, -14573, 768), (0, 17771, 128)]),
    ]
}

#[test]
fn first_four_coefficients_are_exact() {
    let got = perturbation_coefficients(4).unwrap();
    assert_eq!(got, expected());
    assert_eq!(got[2].to_string(), "pi^4/720 - 5*pi^2/48 + 7/8");
    assert_eq!(
        got[4].to_string(),
        "pi^8/362880 - pi^6/270 + 683*pi^4/1280 - 14573*pi^2/768 + 17771/128"
    );
}

#[test]
fn fifth_coefficient() {
    // independent symbolic computation
    let l5 = PiPoly::from_terms(&[
        (5, 7, 34214400),
        (4, -223, 345600),
        (3, 101783, 483840),
        (2, -115501, 5760),
        (1, 938927, 1536),
        (0, -1094647, 256),
    ]);
    let got = perturbation_coefficients(5).unwrap();
    assert_eq!(got[5], l5);
    assert!((got[5].to_f64() + 4.863e-7).abs() < 1e-9, "{}", got[5].to_f64());
}

#[test]
fn sixth_order_solves() {
    let st = ansatz(6).unwrap();
    assert_eq!(st.lambdas.len(), 7);
    for k in 0..=6 {
        assert!(st.boundary_value(k).unwrap().is_zero());
        let degree = st.alpha[k].len().max(st.beta[k].len());
        assert!(degree <= 3 * k + 1);
    }
    assert!((st.lambdas[6].to_f64() - 3.084e-7).abs() < 1e-9, "{}", st.lambdas[6].to_f64());
}

#[test]
fn truncation_residual_scales_as_next_power() {
    let st = ansatz(4).unwrap();
    let r1 = st.max_residual(4, 0.01, 200).unwrap();
    let r2 = st.max_residual(4, 0.005, 200).unwrap();
    let ratio = r1 / r2;
    assert!((25.0..40.0).contains(&ratio), "ratio {ratio}, residuals {r1:e} {r2:e}");
    let r0 = st.max_residual(2, 0.01, 200).unwrap();
    assert!(r0 > r1);
}

#[test]
fn series_matches_solver() {
    let l = perturbation_coefficients(4).unwrap();
    let mut errs = Vec::new();
    for b in [0.01, 0.02, 0.05, 0.1] {
        let exact = weber_series_eigenvalue_pi(b, 1.0).unwrap();
        let s4 = evaluate_series_extended(&l, SeriesTarget::WeberPi { b }, 4).unwrap();
        let err = (exact - s4).hi().abs();
        assert!(err <= 10.0 * b.powi(5), "b = {b}: {err:e}");
        errs.push(err);
    }
    for (pair, label) in [((0, 1), "0.02/0.01"), ((2, 3), "0.1/0.05")] {
        let ratio = errs[pair.1] / errs[pair.0];
        assert!((24.0..=40.0).contains(&ratio), "{label}: {ratio}");
    }
}

#[test]
fn series_bounds_at_trivial_points() {
    let l = perturbation_coefficients(4).unwrap();
    for k in 0..=4 {
        assert_eq!(evaluate_series(&l, SeriesTarget::WeberPi { b: 0.0 }, k).unwrap(), 1.0);
    }
    let a = 0.7;
    let linear = evaluate_series(&l, SeriesTarget::DriftPi { a }, 0).unwrap();
    assert!((linear - (1.0 + a / 2.0)).abs() < 1e-15);
}

#[test]
fn drift_excess_over_linear_bound_is_quadratic() {
    // λ̄_{a,π} - (1 + a/2) ≈ λ_1 a²/4 with λ_1 > 0
    let l1 = perturbation_coefficients(1).unwrap()[1].to_f64();
    assert!(l1 > 0.0);
    let excess = |a: f64| drift_eigenvalue(a, PI).unwrap() - 1.0 - 0.5 * a;
    let (e1, e2) = (excess(0.1), excess(0.05));
    assert!(e1 > 0.0 && e2 > 0.0);
    assert!((e1 / e2 - 4.0).abs() < 0.05, "{}", e1 / e2);
    assert!((e2 / (0.05f64 * 0.05) - l1 / 4.0).abs() < 1e-3);
    let l = perturbation_coefficients(4).unwrap();
    let s = evaluate_series(&l, SeriesTarget::DriftPi { a: 0.1 }, 4).unwrap();
    assert!(s > 1.05);
}

#[test]
fn general_drift_series_tracks_solver() {
    let l = perturbation_coefficients(4).unwrap();
    for d in [1.0, 2.0] {
        let a = 0.2;
        let series = evaluate_series(&l, SeriesTarget::DriftGeneral { a, d }, 4).unwrap();
        let exact = drift_eigenvalue(a, d).unwrap();
        assert!((series - exact).abs() < 1e-9, "D = {d}: {series} vs {exact}");
    }
}
