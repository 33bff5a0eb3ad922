//! Gauss–Legendre panels and exp-sinh integration on the half line.

use std::f64::consts::FRAC_PI_2;

const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// 8-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre8<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
        acc += w * (f(mid - half * x) + f(mid + half * x));
    }
    acc * half
}

/// Composite 8-point Gauss–Legendre over the panels delimited by `breaks`.
pub fn composite_gl8<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64]) -> f64 {
    breaks
        .windows(2)
        .map(|w| gauss_legendre8(&mut f, w[0], w[1]))
        .sum()
}

/// `∫_0^∞ g(t) dt` by the exp-sinh rule, where `log_g` returns `ln g(t)`
/// (the integrand must be positive).
///
/// Handles integrable algebraic singularities at `t = 0` and exponential
/// decay at infinity.
pub fn exp_sinh_positive<F: Fn(f64) -> f64>(log_g: F, rel_tol: f64) -> f64 {
    let term = |x: f64| {
        let t = (FRAC_PI_2 * x.sinh()).exp();
        if t == 0.0 || !t.is_finite() {
            return 0.0;
        }
        let v = (log_g(t) + t.ln()).exp() * FRAC_PI_2 * x.cosh();
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let x_max = 5.0;
    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while (k as f64) * h <= x_max {
        sum += term(k as f64 * h) + term(-(k as f64) * h);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..10 {
        h *= 0.5;
        let mut extra = 0.0;
        let mut j = 1;
        while (j as f64) * h <= x_max {
            extra += term(j as f64 * h) + term(-(j as f64) * h);
            j += 2;
        }
        sum += extra;
        let next = sum * h;
        let done = (next - estimate).abs() <= rel_tol * next.abs();
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl8_is_exact_for_degree_15() {
        let v = gauss_legendre8(|x| x.powi(15) + x.powi(14), 0.0, 1.0);
        assert!((v - (1.0 / 16.0 + 1.0 / 15.0)).abs() < 1e-15);
    }

    #[test]
    fn composite_sine() {
        let breaks: Vec<f64> = (0..=10).map(|i| i as f64 * std::f64::consts::PI / 10.0).collect();
        assert!((composite_gl8(f64::sin, &breaks) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exp_sinh_gamma_half() {
        // ∫ t^{-1/2} e^{-t} dt = √π
        let v = exp_sinh_positive(|t| -0.5 * t.ln() - t, 1e-14);
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-13, "{v}");
    }
}
