//! Univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `coefficients[k]` multiplies `x^k`. Trailing zeros are never stored, so the
/// zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactPolynomial {
    coefficients: Vec<BigInt>,
}

impl ExactPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        ExactPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        ExactPolynomial::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        ExactPolynomial::new(vec![c.into()])
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        ExactPolynomial::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coefficients.last()
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    /// `x * self`
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = Vec::with_capacity(self.coefficients.len() + 1);
        c.push(BigInt::zero());
        c.extend(self.coefficients.iter().cloned());
        ExactPolynomial { coefficients: c }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        ExactPolynomial::new(self.coefficients.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        ExactPolynomial::new(
            (0..n)
                .map(|k| self.coefficient(k) + other.coefficient(k))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        ExactPolynomial::new(
            (0..n)
                .map(|k| self.coefficient(k) - other.coefficient(k))
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        ExactPolynomial::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Horner evaluation in exact rational arithmetic.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Evaluates exactly at the binary value of `x`, rounding once at the end.
    pub fn eval_f64_exact(&self, x: f64) -> Option<f64> {
        let xr = BigRational::from_float(x)?;
        self.eval_exact(&xr).to_f64()
    }

    /// Plain Horner evaluation in `f64` (unstable for high degree; coefficients
    /// beyond the `f64` range give infinities).
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let one = mag == BigInt::from(1);
            match k {
                0 => write!(f, "{mag}")?,
                1 if one => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if one => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}
