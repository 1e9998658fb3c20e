//! Dense univariate polynomials over an exact ring.

use crate::ring::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};
use std::fmt;

/// Polynomial `c[0] + c[1] u + ... + c[d] u^d`. Trailing zeros are always
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<R: Ring> {
    coeffs: Vec<R>,
}

/// Integer polynomial in the indeterminate `u`.
pub type IntPolynomial = Polynomial<BigInt>;

impl<R: Ring> Polynomial<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * u^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&R::from_i64(k as i64)))
            .collect();
        Self::new(coeffs)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> Ring for Polynomial<R> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }
}

impl IntPolynomial {
    /// Exact Lagrange interpolation through `(x_i, y_i)`. The result has
    /// rational coefficients in general.
    pub fn interpolate_rational(points: &[(BigInt, BigInt)]) -> Polynomial<BigRational> {
        let mut acc = Polynomial::<BigRational>::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Polynomial::<BigRational>::one();
            let mut denom = BigInt::from(1);
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&Polynomial::new(vec![
                    BigRational::from_integer(-xj.clone()),
                    BigRational::from_integer(BigInt::from(1)),
                ]));
                denom *= xi - xj;
            }
            let scale = BigRational::new(yi.clone(), denom);
            acc = acc.add(&basis.map(|c| c * &scale));
        }
        acc
    }

    /// Interpolation that insists on an integer-coefficient result.
    pub fn interpolate(points: &[(BigInt, BigInt)]) -> Option<IntPolynomial> {
        let rational = Self::interpolate_rational(points);
        let mut coeffs = Vec::with_capacity(rational.coeffs.len());
        for c in rational.coeffs {
            if !c.is_integer() {
                return None;
            }
            coeffs.push(c.to_integer());
        }
        Some(Polynomial::new(coeffs))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    /// Serialized as a coefficient list of decimal strings, constant term first.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(serializer)
    }
}
