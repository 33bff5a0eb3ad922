use bemery_core::spectra::hypergeometric::{
    decaying_closed_form, even_closed_form, kummer_characteristic, printed_closed_form, tricomi_characteristic,
};
use bemery_core::spectra::{
    basic_diameter_bound, drift_eigenvalue, drift_from_weber, drift_problem, lower_bounds_drift,
    neumann_drift_eigenvalue, soliton_diameter_bounds, weber_dirichlet_eigenvalue, weber_eigenvalue, weber_problem,
    DriftEigenQuery, WeberEigenQuery, BOUND_A, BOUND_PW, BOUND_SUM,
};
use bemery_core::sturm_liouville::{fd_oracle, fd_oracle_eigenvalue, shoot_eigenvalue, solve};
use std::f64::consts::PI;

// Reference eigenvalues from 40-digit arithmetic.
const WEBER_1_PI: f64 = 1.305_741_690_682_984_766_786_27;
const WEBER_4_PI: f64 = 2.064_899_950_600_699_743_714_91;
const WEBER_1_3: f64 = 1.377_863_507_293_696_165_958_817;
const WEBER_100_PI: f64 = 10.000_000_002_111_149_466_693_17;
const DRIFT_1_PI: f64 = 1.579_521_912_496_514_422_955_998;
const DRIFT_M1_PI: f64 = 0.579_521_912_496_514_422_955_998_5;
const DRIFT_HALF_PI: f64 = 1.270_084_955_710_986_321_769_968;
const DRIFT_1_1: f64 = 10.377_771_429_903_679_706_184_15;
const DRIFT_1_5: f64 = 1.082_608_738_041_159_800_002_92;
const DRIFT_M2_5: f64 = 0.009_908_209_247_374_361_018_894_35;
const IMPROVED_1: f64 = 2.613_859_455_438_562_006_212_529;

#[test]
fn reference_values() {
    let cases = [
        (weber_eigenvalue(1.0, PI), WEBER_1_PI),
        (weber_eigenvalue(4.0, PI), WEBER_4_PI),
        (weber_eigenvalue(1.0, 3.0), WEBER_1_3),
        (weber_eigenvalue(100.0, PI), WEBER_100_PI),
        (drift_eigenvalue(1.0, PI), DRIFT_1_PI),
        (drift_eigenvalue(-1.0, PI), DRIFT_M1_PI),
        (drift_eigenvalue(0.5, PI), DRIFT_HALF_PI),
        (drift_eigenvalue(1.0, 1.0), DRIFT_1_1),
        (drift_eigenvalue(1.0, 5.0), DRIFT_1_5),
        (drift_eigenvalue(-2.0, 5.0), DRIFT_M2_5),
        (drift_eigenvalue(2.0, PI), 1.0 + WEBER_1_PI),
        (drift_eigenvalue(4.0, PI), 2.0 + WEBER_4_PI),
    ];
    for (i, (got, want)) in cases.into_iter().enumerate() {
        let got = got.unwrap();
        assert!((got - want).abs() < 1e-9 * want.max(1.0), "case {i}: {got} vs {want}");
    }
}

#[test]
fn cross_method_grid() {
    for d in [1.0, PI, 5.0] {
        for a in [-2.0, 0.0, 1.0, 2.0, 4.0] {
            let p = drift_problem(a, d);
            let s = solve(&p, 1e-11).unwrap();
            let f = fd_oracle_eigenvalue(&p, 512, 3).unwrap();
            assert!((s.eigenvalue - f).abs() <= 1e-6, "a={a} D={d}: {} vs {f}", s.eigenvalue);
            assert!(s.residual <= 1e-6 * (1.0 + s.eigenvalue.abs()), "a={a} D={d}: residual {}", s.residual);
            assert_eq!(s.interior_zeros(), 0);
        }
        for b in [0.0, 0.5, 1.0, 4.0, 25.0] {
            let p = weber_problem(b, d);
            let s = solve(&p, 1e-11).unwrap();
            let f = fd_oracle_eigenvalue(&p, 512, 3).unwrap();
            assert!((s.eigenvalue - f).abs() <= 1e-6, "b={b} D={d}: {} vs {f}", s.eigenvalue);
            assert!(s.residual <= 1e-6 * (1.0 + s.eigenvalue.abs()), "b={b} D={d}: residual {}", s.residual);
        }
    }
}

#[test]
fn shooting_agrees_with_oracle_at_unit_oscillator() {
    let p = weber_problem(1.0, PI);
    let f = fd_oracle_eigenvalue(&p, 512, 3).unwrap();
    let s = shoot_eigenvalue(&p, (1.2, 1.4), 1e-12).unwrap();
    assert!((s.eigenvalue - f).abs() < 1e-7);
    let p4 = weber_problem(4.0, PI);
    let f4 = fd_oracle_eigenvalue(&p4, 512, 3).unwrap();
    assert!((f4 - WEBER_4_PI).abs() < 1e-6);
}

#[test]
fn oracle_converges_at_second_order() {
    for p in [weber_problem(4.0, PI), drift_problem(2.0, 5.0)] {
        let e = fd_oracle(&p, 64, 3).unwrap();
        assert!(e.observed_order >= 1.95, "{}", e.observed_order);
        let diffs: Vec<f64> = e.raw.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        assert!(diffs.windows(2).all(|w| w[1] < w[0]));
    }
}

#[test]
fn weber_and_drift_identity() {
    for d in [1.0, PI, 5.0] {
        for a in [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0] {
            let direct = drift_eigenvalue(a, d).unwrap();
            let via = drift_from_weber(a, d).unwrap();
            assert!((direct - via).abs() <= 1e-7, "a={a} D={d}: {direct} vs {via}");
        }
        let l2 = drift_eigenvalue(2.0, d).unwrap();
        assert!((l2 - weber_eigenvalue(1.0, d).unwrap() - 1.0).abs() <= 1e-7);
    }
}

#[test]
fn scaling_and_normalisation() {
    for d in [1.0, PI, 5.0] {
        for a in [0.5, 1.0, 2.0, 4.0] {
            let l = drift_eigenvalue(a, d).unwrap();
            let unit = drift_eigenvalue(1.0, a.sqrt() * d).unwrap();
            assert!((l - a * unit).abs() <= 1e-7, "a={a} D={d}");
            let norm = drift_eigenvalue(2.0, (a / 2.0).sqrt() * d).unwrap();
            assert!((l - 0.5 * a * norm).abs() <= 1e-7, "a={a} D={d}");
        }
        for b in [0.5, 4.0, 25.0] {
            let l = weber_eigenvalue(b, d).unwrap();
            let unit = weber_eigenvalue(1.0, b.powf(0.25) * d).unwrap();
            assert!((l - b.sqrt() * unit).abs() <= 1e-7, "b={b} D={d}");
        }
    }
    for d in [1.0, 2.0, PI, 5.0] {
        let l = weber_eigenvalue(1.0, d).unwrap();
        let at_pi = weber_eigenvalue(d.powi(4) / PI.powi(4), PI).unwrap();
        assert!((l - PI * PI / (d * d) * at_pi).abs() <= 1e-7, "D={d}");
    }
}

#[test]
fn weber_lower_bounds() {
    for b in [0.1, 1.0, 4.0, 25.0, 100.0] {
        let l = weber_eigenvalue(b, PI).unwrap();
        assert!(l >= 1f64.max(b.sqrt()) - 1e-9, "b={b}: {l}");
    }
}

#[test]
fn drift_lower_bounds() {
    for d in [1.0, PI, 5.0] {
        for a in [0.5, 1.0, 2.0, 4.0] {
            let r = lower_bounds_drift(a, d, 1e-9).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(r.bounds.iter().all(|b| b.satisfied));
        }
        let r = lower_bounds_drift(0.0, d, 1e-9).unwrap();
        assert!((r.lambda - PI * PI / (d * d)).abs() < 1e-9);
        assert!(r.get(BOUND_PW).unwrap().asserted && r.get(BOUND_PW).unwrap().satisfied);
    }
    let r = lower_bounds_drift(4.0, PI, 1e-9).unwrap();
    assert_eq!(r.get(BOUND_A).unwrap().value, 4.0);
    assert_eq!(r.get(BOUND_SUM).unwrap().value, 3.0);
    assert!(r.lambda >= 4.0);
}

#[test]
fn monotonicity() {
    let ds = [0.5, 1.0, 2.0, PI, 5.0];
    for a in [-1.0, 0.0, 1.0, 3.0] {
        let vals: Vec<f64> = ds.iter().map(|&d| drift_eigenvalue(a, d).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]), "a={a}: {vals:?}");
    }
    for d in [1.0, PI] {
        let vals: Vec<f64> = [0.0, 0.5, 1.0, 2.0, 4.0].iter().map(|&a| drift_eigenvalue(a, d).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]), "D={d}: {vals:?}");
        let vals: Vec<f64> = [0.0, 0.5, 1.0, 4.0, 25.0].iter().map(|&b| weber_eigenvalue(b, d).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]), "D={d}: {vals:?}");
    }
}

#[test]
fn eigenfunction_structure() {
    let s = neumann_drift_eigenvalue(DriftEigenQuery::new(1.0, PI)).unwrap();
    // derivative positive on the open half interval
    let n = s.samples.len();
    assert!(s.samples[..n - 1].iter().all(|q| q.du > 0.0));
    assert!(s.samples.last().unwrap().du.abs() < 1e-8);
    let w = weber_dirichlet_eigenvalue(WeberEigenQuery::new(4.0, PI)).unwrap();
    assert!(w.samples[..w.samples.len() - 1].iter().all(|q| q.u > 0.0));
}

#[test]
fn large_interval_limit() {
    let l = weber_eigenvalue(1.0, 12.0).unwrap();
    assert!((l - 1.0).abs() <= 1e-4);
    let sol = weber_dirichlet_eigenvalue(WeberEigenQuery::new(1.0, 12.0)).unwrap();
    for s in [0.5, 1.0, 2.0] {
        let (u, _) = sol.eval(s).unwrap();
        assert!((u - (-0.5 * s * s).exp()).abs() < 1e-6);
    }
}

#[test]
fn printed_characteristic_does_not_bracket() {
    let d = 3.0;
    let lo = tricomi_characteristic(WEBER_1_3 - 0.1, d).unwrap();
    let hi = tricomi_characteristic(WEBER_1_3 + 0.1, d).unwrap();
    assert!(lo * hi > 0.0, "{lo} {hi}");
}

#[test]
fn kummer_characteristic_brackets() {
    for (b, d, l) in [(1.0, 3.0, WEBER_1_3), (1.0, PI, WEBER_1_PI), (4.0, PI, WEBER_4_PI)] {
        let lo = kummer_characteristic(l - 0.1, b, d).unwrap();
        let hi = kummer_characteristic(l + 0.1, b, d).unwrap();
        assert!(lo * hi < 0.0, "b={b} D={d}");
        assert!(kummer_characteristic(l, b, d).unwrap().abs() < 1e-9);
    }
}

#[test]
fn characteristics_monotone_in_lambda() {
    let mut prev = tricomi_characteristic(0.5, 3.0).unwrap();
    for i in 1..20 {
        let v = tricomi_characteristic(0.5 + 0.1 * i as f64, 3.0).unwrap();
        assert!(v > prev);
        prev = v;
    }
    let mut prev = kummer_characteristic(1.0, 1.0, 3.0).unwrap();
    for i in 1..10 {
        let v = kummer_characteristic(1.0 + 0.08 * i as f64, 1.0, 3.0).unwrap();
        assert!(v < prev);
        prev = v;
    }
}

#[test]
fn closed_forms_against_eigenfunction() {
    // Unit oscillator on D = 3; eigenfunction normalised to u(0) = 1.
    let sol = weber_dirichlet_eigenvalue(WeberEigenQuery::new(1.0, 3.0)).unwrap();
    let l = sol.eigenvalue;
    let p0 = printed_closed_form(l, 1e-9).unwrap();
    let d0 = decaying_closed_form(l, 1e-9).unwrap();
    let mut printed_dev = 0.0f64;
    let mut decaying_dev = 0.0f64;
    for s in [0.5, 1.0] {
        let (u, _) = sol.eval(s).unwrap();
        printed_dev = printed_dev.max((printed_closed_form(l, s).unwrap() / p0 - u).abs());
        decaying_dev = decaying_dev.max((decaying_closed_form(l, s).unwrap() / d0 - u).abs());
        assert!((even_closed_form(l, s).unwrap() - u).abs() < 1e-8);
    }
    assert!(printed_dev > 1e-2, "{printed_dev}");
    assert!(decaying_dev > 1e-2, "{decaying_dev}");
}

#[test]
fn diameter_bounds() {
    let b = soliton_diameter_bounds(1.0).unwrap();
    assert!((b.basic - PI * (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert!((b.basic - 2.565_099_660_323_728).abs() < 1e-12);
    assert!((b.improved - IMPROVED_1).abs() < 1e-8, "{}", b.improved);
    assert!(b.improved > b.basic);
    assert!((drift_eigenvalue(1.0, b.improved).unwrap() - 2.0).abs() < 1e-8);
    for a in [0.5, 2.0, 4.0] {
        let ba = soliton_diameter_bounds(a).unwrap();
        assert!((ba.improved * a.sqrt() - b.improved).abs() < 1e-6, "a={a}");
        assert!((ba.basic - basic_diameter_bound(a)).abs() < 1e-15);
        assert!(ba.improved >= ba.basic);
    }
}

#[test]
fn deep_well_reaches_full_line_ground_state() {
    // the tail beyond |s| = 4 carries e^{-40} of the Gaussian ground state
    for (b, d) in [(25.0, 8.0), (100.0, 6.0)] {
        let lambda = weber_eigenvalue(b, d).unwrap();
        assert!((lambda - f64::sqrt(b)).abs() < 1e-9, "b = {b}: {lambda}");
    }
}
