//! Exact coefficient rings.
//!
//! Two rings are provided: [`ExactRational`] (the rationals) and [`MultiPoly`]
//! (polynomials in `a1, a2, b1, b2` over the rationals). The series engine is
//! generic over [`Coefficient`], so the same code handles ordinary Hurwitz
//! series and the four-parameter generalized ones.

mod poly;
mod rational;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Result;

pub use poly::{Monomial, MultiPoly, Var};
pub use rational::ExactRational;

/// A commutative ring containing the rationals.
///
/// Arithmetic takes operands by reference; implementations must return values
/// in canonical form so that `==` is value equality.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(n: &BigInt) -> Self;
    fn from_rational(q: &ExactRational) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// True when every rational number inside the element is an integer.
    fn is_integral(&self) -> bool;

    /// `self / divisor`, failing unless the quotient exists in the ring.
    fn exact_div(&self, divisor: &Self) -> Result<Self>;

    /// Multiplicative inverse, if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    fn mul_integer(&self, n: &BigInt) -> Self {
        self.mul(&Self::from_integer(n))
    }

    fn mul_rational(&self, q: &ExactRational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }
}

/// Binomial coefficient `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub(crate) fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(c.clone());
    }
    row
}

/// All rows `0..=n` of Pascal's triangle.
pub(crate) fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    (0..=n).map(binomial_row).collect()
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
