//! Exact rational polynomial coefficients and the combinatorial helpers
//! needed to build them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variable in which the coefficients are ascending powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// `Σ c_j x^j`
    Monomial,
    /// `Σ c_j x^{jθ}`
    PowerOf(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoeffs {
    pub coefficients: Vec<BigRational>,
    pub basis: Basis,
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Rising factorial `(a)_k`.
pub fn pochhammer(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// Largest absolute value, as a double.
pub fn max_abs(v: &[BigRational]) -> f64 {
    v.iter().map(|c| to_f64(&c.abs())).fold(0.0, f64::max)
}

impl PolynomialCoeffs {
    /// Drops trailing zero coefficients.
    pub fn new(mut coefficients: Vec<BigRational>, basis: Basis) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients, basis }
    }

    /// Degree in the basis variable.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coefficients.iter().map(to_f64).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let v = match self.basis {
            Basis::Monomial => x,
            Basis::PowerOf(theta) => x.powi(theta as i32),
        };
        horner(&self.to_f64(), v)
    }
}

pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}
