use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{Coefficient, ExactRational};
use crate::{Error, Result};

/// The four indeterminates of the generalized series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A1,
    A2,
    B1,
    B2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::A1, Var::A2, Var::B1, Var::B2];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A1 => "a1",
            Var::A2 => "a2",
            Var::B1 => "b1",
            Var::B2 => "b2",
        }
    }
}

/// Exponent vector `(e_a1, e_a2, e_b1, e_b2)`.
///
/// The derived ordering is lexicographic with `a1 > a2 > b1 > b2`, which is
/// the fixed monomial order used for division and rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / rhs` if every exponent of `rhs` is at most the one in `self`.
    pub fn checked_div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in `a1, a2, b1, b2` with rational coefficients.
///
/// No stored coefficient is zero, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, ExactRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: ExactRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(ExactRational::one(), Monomial::var(v))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ExactRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Leading term in lex order `a1 > a2 > b1 > b2`.
    pub fn leading(&self) -> Option<(&Monomial, &ExactRational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// True if every term has total degree `d` (the zero polynomial qualifies).
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    pub fn as_constant(&self) -> Option<ExactRational> {
        match self.terms.len() {
            0 => Some(ExactRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: &ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Value at the point `(a1, a2, b1, b2) = point`.
    pub fn eval(&self, point: &[ExactRational; 4]) -> ExactRational {
        let mut total = ExactRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t * x.pow(e);
                }
            }
            total = total + t;
        }
        total
    }

    /// Exact quotient `self / divisor` by multivariate division in lex order.
    ///
    /// Any nonzero remainder is an error carrying the remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (lead_m, lead_c) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let (lead_m, lead_c) = (*lead_m, lead_c.clone());
        let mut rest = self.clone();
        let mut quotient = MultiPoly::zero();
        let mut remainder = MultiPoly::zero();
        while let Some((m, c)) = rest.leading() {
            let (m, c) = (*m, c.clone());
            match m.checked_div(&lead_m) {
                Some(qm) => {
                    let qc = c.checked_div(&lead_c)?;
                    for (dm, dc) in &divisor.terms {
                        rest.add_term(dm.mul(&qm), &-(dc * &qc));
                    }
                    quotient.add_term(qm, &qc);
                }
                None => {
                    rest.terms.remove(&m);
                    remainder.add_term(m, &c);
                }
            }
        }
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(Error::NotDivisible {
                remainder: remainder.to_string(),
            })
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                c.abs()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude == ExactRational::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Coefficient for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }

    fn one() -> Self {
        MultiPoly::constant(ExactRational::one())
    }

    fn from_integer(n: &BigInt) -> Self {
        MultiPoly::constant(ExactRational::from_integer(n.clone()))
    }

    fn from_rational(q: &ExactRational) -> Self {
        MultiPoly::constant(q.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_integral(&self) -> bool {
        self.terms.values().all(ExactRational::is_integer)
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        MultiPoly::exact_div(self, divisor)
    }

    fn unit_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        c.recip().ok().map(MultiPoly::constant)
    }

    fn mul_integer(&self, n: &BigInt) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, Coefficient::mul_integer(c, n)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    fn mul_rational(&self, q: &ExactRational) -> Self {
        self.scale(q)
    }
}
