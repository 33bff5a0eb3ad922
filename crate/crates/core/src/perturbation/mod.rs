//! Exact perturbation series of the Weber eigenvalue on `[-π/2, π/2]` in
//! powers of `b`.
//!
//! At order `k` the correction is `u_k = Σ_j α_{k,j} s^j cos s + β_{k,j} s^j sin s`
//! and satisfies `u_k'' + u_k = s² u_{k-1} - Σ_{m=1}^{k} λ_m u_{k-m}`.

mod pipoly;

pub use pipoly::{rational, rational_to_twofloat, PiPoly};

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::Zero;
use twofloat::TwoFloat;

use crate::error::{Result, SpectralError};

/// Coefficients by power of `s` of `Σ_j (cos_j s^j cos s + sin_j s^j sin s)`.
#[derive(Debug, Clone, PartialEq, Default)]
struct TrigPoly {
    cos: Vec<PiPoly>,
    sin: Vec<PiPoly>,
}

impl TrigPoly {
    fn with_len(n: usize) -> Self {
        Self { cos: vec![PiPoly::zero(); n], sin: vec![PiPoly::zero(); n] }
    }

    fn len(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    fn add_scaled(&mut self, other: &TrigPoly, factor: &PiPoly, shift: usize) {
        let need = other.len() + shift;
        if self.cos.len() < need {
            self.cos.resize(need, PiPoly::zero());
            self.sin.resize(need, PiPoly::zero());
        }
        for (j, c) in other.cos.iter().enumerate() {
            self.cos[j + shift] = &self.cos[j + shift] + &(c * factor);
        }
        for (j, c) in other.sin.iter().enumerate() {
            self.sin[j + shift] = &self.sin[j + shift] + &(c * factor);
        }
    }

    fn degree(&self) -> Option<usize> {
        (0..self.len()).rev().find(|&j| {
            self.cos.get(j).is_some_and(|c| !c.is_zero()) || self.sin.get(j).is_some_and(|c| !c.is_zero())
        })
    }

    fn trimmed(mut self) -> Self {
        let n = self.degree().map_or(0, |d| d + 1);
        self.cos.truncate(n);
        self.sin.truncate(n);
        self
    }

    /// `u(π/2) / (π/2) = Σ_j sin_j (π/2)^{j-1}`; only odd `j` keep the
    /// value a polynomial in `π²`, and even `j` never carry a sine term.
    fn boundary_over_half_pi(&self) -> Result<PiPoly> {
        let mut acc = PiPoly::zero();
        for (j, c) in self.sin.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j % 2 == 0 {
                return Err(SpectralError::InvalidProblem(format!("odd term s^{j} sin s in an even ansatz")));
            }
            let i = ((j - 1) / 2) as u32;
            let quarter = rational(1, 4i64.pow(i));
            acc = &acc + &(c * &PiPoly::monomial(i, quarter));
        }
        Ok(acc)
    }
}

/// Solution of `p'' + p = f` with no `s^0` terms.
fn particular(f: &TrigPoly) -> TrigPoly {
    let m_max = f.len();
    let mut p = TrigPoly::with_len(m_max + 2);
    let zero = PiPoly::zero();
    for m in (0..m_max).rev() {
        let a = f.cos.get(m).unwrap_or(&zero);
        let b = f.sin.get(m).unwrap_or(&zero);
        let two_m1 = BigRational::from_integer(((2 * (m + 1)) as i64).into());
        let inv = BigRational::from_integer(1.into()) / two_m1;
        let c = BigRational::from_integer((((m + 2) * (m + 1)) as i64).into());
        let q_next = (a - &p.cos[m + 2].scale(&c)).scale(&inv);
        let p_next = (&p.sin[m + 2].scale(&c) - b).scale(&inv);
        p.sin[m + 1] = q_next;
        p.cos[m + 1] = p_next;
    }
    p.trimmed()
}

/// The expansion through a given order.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzState {
    pub order: usize,
    /// `alpha[k][j]`: coefficient of `b^k s^j cos s`.
    pub alpha: Vec<Vec<PiPoly>>,
    /// `beta[k][j]`: coefficient of `b^k s^j sin s`.
    pub beta: Vec<Vec<PiPoly>>,
    pub lambdas: Vec<PiPoly>,
}

/// Solves the order-by-order equations through `max_order`.
pub fn ansatz(max_order: usize) -> Result<AnsatzState> {
    let mut terms = vec![TrigPoly { cos: vec![PiPoly::from_int(1)], sin: vec![PiPoly::zero()] }];
    let mut lambdas = vec![PiPoly::from_int(1)];
    let cos_forcing = TrigPoly { cos: vec![PiPoly::from_int(1)], sin: vec![PiPoly::zero()] };
    let resonant = particular(&cos_forcing);
    let resonant_bc = resonant.boundary_over_half_pi()?;
    for k in 1..=max_order {
        let mut forcing = TrigPoly::default();
        forcing.add_scaled(&terms[k - 1], &PiPoly::from_int(1), 2);
        for m in 1..k {
            forcing.add_scaled(&terms[k - m], &-lambdas[m].clone(), 0);
        }
        let known = particular(&forcing);
        // u_k = known - λ_k · resonant, and u_k(π/2) = 0 fixes λ_k.
        if resonant_bc.is_zero() {
            return Err(SpectralError::NormalizationInconsistent { order: k });
        }
        let scale = resonant_bc.coeff(0);
        if resonant_bc.degree() != Some(0) || scale.is_zero() {
            return Err(SpectralError::NormalizationInconsistent { order: k });
        }
        let lambda_k = known.boundary_over_half_pi()?.scale(&(BigRational::from_integer(1.into()) / scale));
        let mut u_k = known;
        u_k.add_scaled(&resonant, &-lambda_k.clone(), 0);
        let u_k = u_k.trimmed();
        if let Some(degree) = u_k.degree() {
            if degree > 3 * k {
                return Err(SpectralError::AnsatzDegree { order: k, degree, bound: 3 * k });
            }
        }
        if !u_k.cos.first().map_or(true, PiPoly::is_zero) || !u_k.sin.first().map_or(true, PiPoly::is_zero) {
            return Err(SpectralError::NormalizationInconsistent { order: k });
        }
        terms.push(u_k);
        lambdas.push(lambda_k);
    }
    Ok(AnsatzState {
        order: max_order,
        alpha: terms.iter().map(|t| t.cos.clone()).collect(),
        beta: terms.iter().map(|t| t.sin.clone()).collect(),
        lambdas,
    })
}

/// `λ_0, …, λ_{max_order}`.
pub fn perturbation_coefficients(max_order: usize) -> Result<Vec<PiPoly>> {
    ansatz(max_order).map(|s| s.lambdas)
}

impl AnsatzState {
    fn term(&self, k: usize) -> TrigPoly {
        TrigPoly { cos: self.alpha[k].clone(), sin: self.beta[k].clone() }
    }

    /// `u_k(π/2) / (π/2)` as an exact value; zero for every solved order.
    pub fn boundary_value(&self, k: usize) -> Result<PiPoly> {
        if k > self.order {
            return Err(SpectralError::OrderExceeded { requested: k, available: self.order });
        }
        self.term(k).boundary_over_half_pi()
    }

    /// `(u, u', u'')` of the truncation `Σ_{k≤order} b^k u_k` at `s`.
    pub fn eval(&self, order: usize, b: f64, s: f64) -> Result<(f64, f64, f64)> {
        if order > self.order {
            return Err(SpectralError::OrderExceeded { requested: order, available: self.order });
        }
        let (c, sn) = (s.cos(), s.sin());
        let (mut u, mut du, mut d2u) = (0.0, 0.0, 0.0);
        for k in 0..=order {
            let bk = b.powi(k as i32);
            for (j, a) in self.alpha[k].iter().enumerate() {
                let a = a.to_f64() * bk;
                let (p, dp, d2p) = monomial_derivatives(j, s);
                u += a * p * c;
                du += a * (dp * c - p * sn);
                d2u += a * (d2p * c - 2.0 * dp * sn - p * c);
            }
            for (j, a) in self.beta[k].iter().enumerate() {
                let a = a.to_f64() * bk;
                let (p, dp, d2p) = monomial_derivatives(j, s);
                u += a * p * sn;
                du += a * (dp * sn + p * c);
                d2u += a * (d2p * sn + 2.0 * dp * c - p * sn);
            }
        }
        Ok((u, du, d2u))
    }

    /// Exact coefficients of `b^n` in `u'' + (λ - b s²) u` for the
    /// truncations at `order`, as `(n, cos part, sin part)` in floating point.
    /// Orders up to `order` cancel exactly, so only `n = order+1 ..= 2·order+1`
    /// appear.
    fn residual_terms(&self, order: usize) -> Result<Vec<(i32, Vec<f64>, Vec<f64>)>> {
        if order > self.order {
            return Err(SpectralError::OrderExceeded { requested: order, available: self.order });
        }
        let mut out = Vec::new();
        for n in order + 1..=2 * order + 1 {
            let mut r = TrigPoly::default();
            for m in n.saturating_sub(order).max(1)..=order.min(n) {
                r.add_scaled(&self.term(n - m), &self.lambdas[m], 0);
            }
            if n - 1 <= order {
                r.add_scaled(&self.term(n - 1), &PiPoly::from_int(-1), 2);
            }
            let cos = r.cos.iter().map(PiPoly::to_f64).collect();
            let sin = r.sin.iter().map(PiPoly::to_f64).collect();
            out.push((n as i32, cos, sin));
        }
        Ok(out)
    }

    /// `u'' + (λ - b s²) u` for the truncations of `u` and `λ` at `order`.
    pub fn residual(&self, order: usize, b: f64, s: f64) -> Result<f64> {
        let terms = self.residual_terms(order)?;
        Ok(residual_from_terms(&terms, b, s))
    }

    /// Largest residual over `samples` equispaced points of `[-π/2, π/2]`.
    pub fn max_residual(&self, order: usize, b: f64, samples: usize) -> Result<f64> {
        let terms = self.residual_terms(order)?;
        let mut worst = 0.0f64;
        for i in 0..=samples {
            let s = -0.5 * PI + PI * i as f64 / samples as f64;
            worst = worst.max(residual_from_terms(&terms, b, s).abs());
        }
        Ok(worst)
    }
}

fn residual_from_terms(terms: &[(i32, Vec<f64>, Vec<f64>)], b: f64, s: f64) -> f64 {
    let poly = |v: &[f64]| v.iter().rev().fold(0.0, |acc, x| acc * s + x);
    terms
        .iter()
        .map(|(n, c, sn)| b.powi(*n) * (poly(c) * s.cos() + poly(sn) * s.sin()))
        .sum()
}

fn monomial_derivatives(j: usize, s: f64) -> (f64, f64, f64) {
    let jf = j as f64;
    let p = s.powi(j as i32);
    let dp = if j >= 1 { jf * s.powi(j as i32 - 1) } else { 0.0 };
    let d2p = if j >= 2 { jf * (jf - 1.0) * s.powi(j as i32 - 2) } else { 0.0 };
    (p, dp, d2p)
}

/// Which eigenvalue a truncated series approximates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesTarget {
    /// `λ̂_{b,π} ≈ Σ λ_k b^k`.
    WeberPi { b: f64 },
    /// `λ̄_{a,π} ≈ a/2 + Σ λ_k (a²/4)^k`.
    DriftPi { a: f64 },
    /// `λ̄_{a,D} ≈ a/2 + (π²/D²) Σ λ_k (a² D⁴ / (4π⁴))^k`.
    DriftGeneral { a: f64, d: f64 },
}

fn check_order(coeffs: &[PiPoly], order: usize) -> Result<()> {
    if order >= coeffs.len() {
        return Err(SpectralError::OrderExceeded { requested: order, available: coeffs.len().saturating_sub(1) });
    }
    Ok(())
}

/// Floating-point value of the series truncated after `order`.
pub fn evaluate_series(coeffs: &[PiPoly], target: SeriesTarget, order: usize) -> Result<f64> {
    check_order(coeffs, order)?;
    let horner = |x: f64| coeffs[..=order].iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64());
    Ok(match target {
        SeriesTarget::WeberPi { b } => horner(b),
        SeriesTarget::DriftPi { a } => 0.5 * a + horner(0.25 * a * a),
        SeriesTarget::DriftGeneral { a, d } => {
            let x = a * a * d.powi(4) / (4.0 * PI.powi(4));
            0.5 * a + PI * PI / (d * d) * horner(x)
        }
    })
}

/// Double-double value of the series truncated after `order`.
pub fn evaluate_series_extended(coeffs: &[PiPoly], target: SeriesTarget, order: usize) -> Result<TwoFloat> {
    check_order(coeffs, order)?;
    let horner = |x: TwoFloat| {
        coeffs[..=order]
            .iter()
            .rev()
            .fold(TwoFloat::from(0.0), |acc, c| acc * x + c.to_twofloat())
    };
    let pi = twofloat::consts::PI;
    Ok(match target {
        SeriesTarget::WeberPi { b } => horner(TwoFloat::from(b)),
        SeriesTarget::DriftPi { a } => horner(TwoFloat::from(a) * a * 0.25) + 0.5 * a,
        SeriesTarget::DriftGeneral { a, d } => {
            let d = TwoFloat::from(d);
            let d2 = d * d;
            let pi2 = pi * pi;
            let x = TwoFloat::from(a) * a * d2 * d2 / (pi2 * pi2 * 4.0);
            horner(x) * pi2 / d2 + 0.5 * a
        }
    })
}
