use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Coefficient;
use crate::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Canonical value of `numer / denom`.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self(num_traits::pow(self.0.clone(), exp as usize))
    }

    fn from_big(r: BigRational) -> Self {
        Self(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => Ok(Self::from_integer(
                s.trim().parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational::from_big((&self.0).$method(&rhs.0))
            }
        }
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational::from_big(self.0.$method(rhs.0))
            }
        }
        impl $tr<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational::from_big(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        Self(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl Coefficient for ExactRational {
    fn zero() -> Self {
        ExactRational::zero()
    }

    fn one() -> Self {
        ExactRational::one()
    }

    fn from_integer(n: &BigInt) -> Self {
        ExactRational::from_integer(n.clone())
    }

    fn from_rational(q: &ExactRational) -> Self {
        q.clone()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.checked_div(divisor)
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.recip().ok()
    }

    fn mul_integer(&self, n: &BigInt) -> Self {
        if n.is_one() {
            return self.clone();
        }
        // (a/b) * n = (a * n/g) / (b/g) with g = gcd(b, n)
        let g = self.0.denom().gcd(n);
        let numer = self.0.numer() * (n / &g);
        let denom = self.0.denom() / &g;
        Self(BigRational::new_raw(numer, denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let half = q(2, 4);
        assert_eq!(half.numer(), &BigInt::from(1));
        assert_eq!(half.denom(), &BigInt::from(2));

        let zero = q(0, -7);
        assert_eq!(zero.numer(), &BigInt::from(0));
        assert_eq!(zero.denom(), &BigInt::from(1));

        let signs = q(-3, -6);
        assert_eq!(signs, q(1, 2));
        assert_eq!(signs.denom(), &BigInt::from(2));

        assert_eq!(q(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(ExactRational::new(1, 0), Err(Error::DivisionByZero));
        assert_eq!(
            q(1, 2).checked_div(&ExactRational::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(q(-17, 1).to_string(), "-17");
        assert_eq!(q(6, 4).to_string(), "3/2");
        assert_eq!("-10/4".parse::<ExactRational>().unwrap(), q(-5, 2));
        assert_eq!("12".parse::<ExactRational>().unwrap(), q(12, 1));
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("x".parse::<ExactRational>().is_err());
    }

    #[test]
    fn integrality() {
        assert!(!q(1, 2).is_integral());
        assert!(q(-17, 1).is_integral());
        assert!(q(4, 2).is_integral());
    }

    #[test]
    fn mul_integer_matches_plain_mul() {
        for (n, d, m) in [(3, 4, 6), (-5, 12, 8), (1, 1, 0), (7, 9, -3)] {
            let x = q(n, d);
            let m = BigInt::from(m);
            assert_eq!(
                x.mul_integer(&m),
                &x * &ExactRational::from_integer(m.clone())
            );
        }
    }

    fn arb_rational() -> impl Strategy<Value = ExactRational> {
        (
            any::<i64>(),
            any::<i64>().prop_filter("nonzero", |d| *d != 0),
        )
            .prop_map(|(n, d)| ExactRational::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_laws(x in arb_rational(), y in arb_rational(), z in arb_rational()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x - &x, ExactRational::zero());
        }

        #[test]
        fn normalization_is_idempotent(x in arb_rational()) {
            let again = ExactRational::new(x.numer().clone(), x.denom().clone()).unwrap();
            prop_assert_eq!(&again, &x);
            prop_assert!(x.denom() > &BigInt::zero());
            prop_assert!(x.numer().gcd(x.denom()).is_one());
        }
    }
}
