//! Exact arithmetic in cyclotomic integer rings `Z[ζ_n]`.
//!
//! An element is stored in its canonical reduced form: the coefficients of
//! a polynomial in `ζ_n` of degree below `φ(n)`, i.e. its remainder modulo
//! the `n`-th cyclotomic polynomial. Elements of different orders combine
//! by lifting both to `Z[ζ_lcm]`, so the type behaves like one ring
//! containing all cyclotomic integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

thread_local! {
    static CYCLOTOMIC_POLYS: RefCell<HashMap<usize, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Rc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = CYCLOTOMIC_POLYS.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    let rc = Rc::new(num);
    CYCLOTOMIC_POLYS.with(|c| c.borrow_mut().insert(n, rc.clone()));
    rc
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An element of `Z[ζ_order]` in canonical reduced form.
#[derive(Clone)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    /// `Σ_k c[k] ζ_order^k` for an arbitrary-length coefficient vector; the
    /// exponents are read modulo `order`.
    pub fn from_coeffs(order: usize, c: &[BigInt]) -> Self {
        let mut v = vec![BigInt::zero(); order];
        for (k, x) in c.iter().enumerate() {
            v[k % order] += x;
        }
        Self::reduce(order, v)
    }

    /// The sum of roots of unity with the given multiplicities:
    /// `Σ_k mult[k] ζ_order^k`.
    pub fn from_multiplicities(order: usize, mult: &[u64]) -> Self {
        let c: Vec<BigInt> = mult.iter().map(|&m| BigInt::from(m)).collect();
        Self::from_coeffs(order, &c)
    }

    /// `ζ_order^k`.
    pub fn root_of_unity(order: usize, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); order];
        v[k % order] = BigInt::one();
        Self::reduce(order, v)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![n.into()],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Reduced coefficients, length `φ(order)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn reduce(order: usize, mut v: Vec<BigInt>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for i in (deg..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    v[i - deg + j] -= &c * pj;
                }
            }
        }
        v.truncate(deg);
        v.resize(deg, BigInt::zero());
        Cyclotomic { order, coeffs: v }
    }

    /// The same element viewed in `Z[ζ_target]`; `target` must be a
    /// multiple of the current order.
    pub fn lift(&self, target: usize) -> Self {
        assert!(target.is_multiple_of(self.order), "lift to non-multiple order");
        if target == self.order {
            return self.clone();
        }
        let step = target / self.order;
        let mut v = vec![BigInt::zero(); target];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        Self::reduce(target, v)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    /// Complex conjugate (`ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut v = vec![BigInt::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(n - k) % n] += c;
        }
        Self::reduce(n, v)
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl crate::ring::Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::integer(0)
    }
    fn one() -> Self {
        Cyclotomic::integer(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (a, b) = self.common(other);
        let mut v = vec![<BigInt as Zero>::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !Zero::is_zero(y) {
                    v[i + j] += x * y;
                }
            }
        }
        Self::reduce(a.order, v)
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn from_i64(n: i64) -> Self {
        Cyclotomic::integer(n)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    /// Integers print as plain decimals; otherwise `c0 + c1*z{n}^1 + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_integer() {
            return write!(f, "{n}");
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
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z{}^{k}", self.order)?;
            }
        }
        Ok(())
    }
}
