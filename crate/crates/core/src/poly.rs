//! Dense univariate polynomials with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer polynomial, coefficients stored lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the last stored
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial(Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("division by (T - 1) left remainder {remainder}")]
pub struct NonzeroRemainder {
    pub remainder: i64,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        IntPolynomial(vec![1])
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `T - 1`
    pub fn t_minus_one() -> Self {
        IntPolynomial(vec![-1, 1])
    }

    /// `T^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        IntPolynomial(c)
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.0
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * x as i128 + c as i128)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntPolynomial::one(), |acc, _| &acc * self)
    }

    /// Exact quotient by `T - 1` via synthetic division.
    pub fn div_t_minus_one(&self) -> Result<IntPolynomial, NonzeroRemainder> {
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let d = self.0.len() - 1;
        let mut q = vec![0i64; d];
        let mut carry = 0i64;
        for k in (1..=d).rev() {
            carry += self.0[k];
            q[k - 1] = carry;
        }
        let remainder = carry + self.0[0];
        if remainder != 0 {
            return Err(NonzeroRemainder { remainder });
        }
        Ok(IntPolynomial::new(q))
    }

    /// Coefficients of `T^{d}, T^{d-1}, .., T^0` with the sign `(-1)^k`
    /// stripped from the `k`-th one, where `d` is the nominal degree.
    pub fn alternating_magnitudes(&self, d: usize) -> Vec<i64> {
        (0..=d)
            .map(|k| {
                let c = self.coeff(d - k);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect()
    }
}

impl From<Vec<i64>> for IntPolynomial {
    fn from(v: Vec<i64>) -> Self {
        IntPolynomial::new(v)
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.0.len().max(rhs.0.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.0.len().max(rhs.0.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => f.write_str("T")?,
                (1, m) => write!(f, "{m}T")?,
                (k, 1) => write!(f, "T^{k}")?,
                (k, m) => write!(f, "{m}T^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
