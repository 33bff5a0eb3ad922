use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use twofloat::TwoFloat;

/// `Σ_m c_m π^{2m}` with exact rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PiPoly {
    coeffs: BTreeMap<u32, BigRational>,
}

const PI_DIGITS: &str = "314159265358979323846264338327950288419716939937510582097494459230781640628620899";

/// π to 80 decimal places as an exact rational.
fn pi_rational() -> &'static BigRational {
    static PI: OnceLock<BigRational> = OnceLock::new();
    PI.get_or_init(|| {
        let num: BigInt = PI_DIGITS.parse().expect("digits");
        let den = num_traits::pow(BigInt::from(10), PI_DIGITS.len() - 1);
        BigRational::new(num, den)
    })
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl PiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// `c · π^{2m}`.
    pub fn monomial(m: u32, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(m, c);
        }
        Self { coeffs }
    }

    /// From `(m, numerator, denominator)` triples meaning `num/den · π^{2m}`.
    pub fn from_terms(terms: &[(u32, i64, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(m, n, d)| acc + Self::monomial(m, rational(n, d)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `π^{2m}`.
    pub fn coeff(&self, m: u32) -> BigRational {
        self.coeffs.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    /// Highest power of `π²` present.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::from_int(1), |acc, _| &acc * self)
    }

    /// Value with `π` replaced by an 80-digit rational approximation.
    pub fn to_rational(&self) -> BigRational {
        let pi2 = pi_rational() * pi_rational();
        let mut acc = BigRational::zero();
        let mut power = BigRational::one();
        let mut m_at = 0u32;
        for (m, c) in &self.coeffs {
            while m_at < *m {
                power *= &pi2;
                m_at += 1;
            }
            acc += c * &power;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_twofloat(&self) -> TwoFloat {
        rational_to_twofloat(&self.to_rational())
    }
}

/// Nearest double-double to an exact rational.
pub fn rational_to_twofloat(r: &BigRational) -> TwoFloat {
    let hi = r.to_f64().unwrap_or(f64::NAN);
    let rest = match BigRational::from_float(hi) {
        Some(h) => (r - h).to_f64().unwrap_or(0.0),
        None => 0.0,
    };
    TwoFloat::new_add(hi, rest)
}

impl Add for PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: PiPoly) -> PiPoly {
        &self + &rhs
    }
}

impl<'a> Add<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &rhs.coeffs {
            let entry = coeffs.entry(*m).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(m);
            }
        }
        PiPoly { coeffs }
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly {
            coeffs: self.coeffs.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: PiPoly) -> PiPoly {
        &self + &(-rhs)
    }
}

impl<'a> Sub<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        let mut out = PiPoly::zero();
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &rhs.coeffs {
                out = &out + &PiPoly::monomial(m1 + m2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: PiPoly) -> PiPoly {
        &self * &rhs
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, m: u32) -> fmt::Result {
    write!(f, "pi^{}", 2 * m)
}

/// Highest power first, e.g. `pi^4/720 - 5*pi^2/48 + 7/8`.
impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.coeffs.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let num = c.numer().abs();
            let den = c.denom();
            if *m == 0 {
                write!(f, "{num}")?;
            } else if num.is_one() {
                write_power(f, *m)?;
            } else {
                write!(f, "{num}*")?;
                write_power(f, *m)?;
            }
            if !den.is_one() {
                write!(f, "/{den}")?;
            }
        }
        Ok(())
    }
}
