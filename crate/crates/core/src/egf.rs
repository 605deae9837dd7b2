#![allow(clippy::needless_range_loop)]
//! Truncated exponential generating functions.
//!
//! An [`EgfSeries`] of order `N` stores `c_0..=c_N` and stands for
//! `sum c_n x^n / n!`. Coefficients are kept EGF-normalized, so a series is
//! Hurwitz exactly when every stored coefficient is integral.
//!
//! Binary operations require equal orders and fail otherwise; nothing is
//! truncated implicitly. Use [`EgfSeries::truncate`] when a shorter series is
//! wanted.

use std::fmt;

use num_bigint::BigInt;

use crate::coeffring::{binomial_row, binomial_table, Coefficient, ExactRational};
use crate::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct EgfSeries<C> {
    coeffs: Vec<C>,
}

/// Where (if anywhere) a series stops being Hurwitz.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralityReport<C> {
    failure: Option<(usize, C)>,
}

impl<C: Coefficient> IntegralityReport<C> {
    pub fn passed() -> Self {
        Self { failure: None }
    }

    pub fn failed(index: usize, value: C) -> Self {
        Self {
            failure: Some((index, value)),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.failure.is_none()
    }

    pub fn first_fail_index(&self) -> Option<usize> {
        self.failure.as_ref().map(|(n, _)| *n)
    }

    pub fn fail_value(&self) -> Option<&C> {
        self.failure.as_ref().map(|(_, v)| v)
    }
}

impl<C: Coefficient> EgfSeries<C> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| C::from_i64(v)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![C::zero(); order + 1])
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The EGF basis element `x^n / n!` (coefficient 1 at index `n`).
    pub fn basis(n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = C::one();
        }
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::basis(1, order)
    }

    /// `e^{hx}`: coefficient `n` is `h^n`.
    pub fn exp_line(h: &BigInt, order: usize) -> Self {
        let h = C::from_integer(h);
        Self::geometric(&h, order)
    }

    /// `e^{qx}` for a rational slope.
    pub fn exp_line_rational(q: &ExactRational, order: usize) -> Self {
        Self::geometric(&C::from_rational(q), order)
    }

    fn geometric(ratio: &C, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = C::one();
        coeffs.push(c.clone());
        for _ in 0..order {
            c = c.mul(ratio);
            coeffs.push(c.clone());
        }
        Self::from_coeffs(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, value: C) {
        self.coeffs[n] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Drop coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooSmall {
                order: self.order(),
            });
        }
        Ok(Self::from_coeffs(self.coeffs[..=order].to_vec()))
    }

    fn same_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        Ok(self.zip_with(rhs, C::add))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        Ok(self.zip_with(rhs, C::sub))
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(&C, &C) -> C) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| op(a, b))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(C::neg).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    pub fn scale_rational(&self, q: &ExactRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_rational(q)).collect())
    }

    /// `self + c` for a constant `c`.
    pub fn add_constant(&self, c: &C) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = s.coeffs[0].add(c);
        s
    }

    /// Product of EGFs: `(fg)_n = sum_j C(n, j) f_j g_{n-j}`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let order = self.order();
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let row = binomial_row(n);
            let mut acc = C::zero();
            for j in 0..=n {
                let (a, b) = (&self.coeffs[j], &rhs.coeffs[n - j]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b).mul_integer(&row[j]));
            }
            out.push(acc);
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].unit_inverse().ok_or(Error::NonUnit {
            what: "constant term",
        })?;
        let order = self.order();
        let table = binomial_table(order);
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut acc = C::zero();
            for j in 0..n {
                let f = &self.coeffs[n - j];
                if f.is_zero() || out[j].is_zero() {
                    continue;
                }
                acc = acc.add(&out[j].mul(f).mul_integer(&table[n][j]));
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(Self::from_coeffs(out))
    }

    /// `f / x` for `f` with zero constant term; the order drops by one.
    pub fn div_by_x(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotDivisibleByX {
                constant: self.coeffs[0].to_string(),
            });
        }
        if self.order() == 0 {
            return Err(Error::OrderTooSmall { order: 0 });
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, c)| c.mul_rational(&ExactRational::new(1, n as i64 + 1).unwrap()))
            .collect();
        Ok(Self::from_coeffs(out))
    }

    /// `x * f`; the order grows by one.
    pub fn mul_by_x(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(C::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push(c.mul_integer(&BigInt::from(n + 1)));
        }
        Self::from_coeffs(out)
    }

    /// `d/dx`; in EGF form a left shift. The order drops by one.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderTooSmall { order: 0 });
        }
        Ok(Self::from_coeffs(self.coeffs[1..].to_vec()))
    }

    /// `f(g(x))` by accumulating `f_m g^m / m!`. Requires `g_0 = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.same_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant {
                constant: inner.coeffs[0].to_string(),
            });
        }
        let order = self.order();
        let mut acc = Self::constant(self.coeffs[0].clone(), order);
        let mut power = Self::one(order);
        for m in 1..=order {
            power = power
                .mul(inner)?
                .scale_rational(&ExactRational::new(1, m as i64).unwrap());
            let fm = &self.coeffs[m];
            if !fm.is_zero() {
                acc = acc.add(&power.scale(fm))?;
            }
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `f(g(x)) = x`, solved one coefficient
    /// at a time. Requires `f_0 = 0` and `f_1` a unit.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant {
                constant: self.coeffs[0].to_string(),
            });
        }
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        let inv1 = self.coeffs[1].unit_inverse().ok_or(Error::NonUnit {
            what: "linear coefficient",
        })?;
        let mut g = Self::x(order);
        g.coeffs[1] = inv1.clone();
        // With g_n unset, coefficient n of f(g) misses exactly f_1 g_n.
        for n in 2..=order {
            let f_n = self.truncate(n)?;
            let g_n = g.truncate(n)?;
            let defect = f_n.compose(&g_n)?.coeffs[n].clone();
            g.coeffs[n] = defect.mul(&inv1).neg();
        }
        Ok(g)
    }

    /// `exp(f)` for `f_0 = 0`, from `y' = f' y`:
    /// `y_{n+1} = sum_{j<=n} C(n, j) f_{j+1} y_{n-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant {
                constant: self.coeffs[0].to_string(),
            });
        }
        let order = self.order();
        let table = binomial_table(order);
        let mut y: Vec<C> = Vec::with_capacity(order + 1);
        y.push(C::one());
        for n in 0..order {
            let mut acc = C::zero();
            for j in 0..=n {
                let f = &self.coeffs[j + 1];
                if f.is_zero() || y[n - j].is_zero() {
                    continue;
                }
                acc = acc.add(&f.mul(&y[n - j]).mul_integer(&table[n][j]));
            }
            y.push(acc);
        }
        Ok(Self::from_coeffs(y))
    }

    /// `log(f)` for `f_0 = 1`, the antiderivative of `f'/f` with zero
    /// constant term.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantNotOne {
                constant: self.coeffs[0].to_string(),
            });
        }
        let order = self.order();
        let table = binomial_table(order);
        // l holds the derivative coefficients l_{n+1}
        let mut dl: Vec<C> = Vec::with_capacity(order);
        for n in 0..order {
            let mut acc = self.coeffs[n + 1].clone();
            for j in 0..n {
                let f = &self.coeffs[n - j];
                if f.is_zero() || dl[j].is_zero() {
                    continue;
                }
                acc = acc.sub(&dl[j].mul(f).mul_integer(&table[n][j]));
            }
            dl.push(acc);
        }
        let mut out = Vec::with_capacity(order + 1);
        out.push(C::zero());
        out.extend(dl);
        Ok(Self::from_coeffs(out))
    }

    /// `f(e^x - 1)`.
    pub fn subst_exp_minus_one(&self) -> Result<Self> {
        let inner = Self::exp_line(&BigInt::from(1), self.order()).add_constant(&C::one().neg());
        self.compose(&inner)
    }

    pub fn integrality_check(&self) -> IntegralityReport<C> {
        match self.coeffs.iter().position(|c| !c.is_integral()) {
            Some(n) => IntegralityReport::failed(n, self.coeffs[n].clone()),
            None => IntegralityReport::passed(),
        }
    }

    /// First index where two series of equal order differ.
    pub fn first_difference(&self, rhs: &Self) -> Option<usize> {
        if self.order() != rhs.order() {
            return Some(self.order().min(rhs.order()) + 1);
        }
        self.coeffs
            .iter()
            .zip(&rhs.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl EgfSeries<ExactRational> {
    /// `log(1 + x)`: coefficient `n` is `(-1)^{n-1} (n-1)!`.
    pub fn log_one_plus_x(order: usize) -> Self {
        let mut s = Self::zero(order);
        let mut fact = BigInt::from(1);
        for n in 1..=order {
            if n > 1 {
                fact *= BigInt::from(n - 1);
            }
            let v = if n % 2 == 1 {
                fact.clone()
            } else {
                -fact.clone()
            };
            s.coeffs[n] = ExactRational::from_integer(v);
        }
        s
    }

    /// Integer coefficients, if the series is Hurwitz.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(ExactRational::to_integer).collect()
    }
}

/// One coefficient per line: `n<TAB>c_n`.
impl<C: Coefficient> fmt::Display for EgfSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}\t{c}")?;
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for EgfSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
