//! The four-parameter generalization over `Q[a1, a2, b1, b2]`.
//!
//! `F` is the series solving
//!
//! ```text
//! (1 + a1 F)(1 + b2 F) / ((1 + a2 F)(1 + b1 F)) = exp(((a1 b2 - a2 b1) F + a1 - a2 - b1 + b2) x)
//! ```
//!
//! Its compositional inverse is `log((1+a1 x)(1+b2 x)/((1+a2 x)(1+b1 x)))`
//! divided by `(a1 b2 - a2 b1) x + a1 - a2 - b1 + b2`. The coefficient of
//! `a1^i a2^j b1^k b2^l x^n/n!` there (with `n = i+j+k+l+1`) has the closed form
//! `(-1)^(n-1) (i+j)! (k+l)! C(i+k, i) C(j+l, j)`.
//!
//! Setting `a1 = b2 = 1`, `a2 = b1 = 0` recovers the `k = 2` tree series and
//! `2 log(1+x)/(2+x)`.

use num_bigint::BigInt;

use crate::coeffring::{binomial, factorial, Coefficient, ExactRational, Monomial, MultiPoly, Var};
use crate::egf::EgfSeries;
use crate::fixpoint::{solve_fixed_point, PhiSpec};
use crate::{Error, Result};

type PolySeries = EgfSeries<MultiPoly>;

/// Largest order for the four-variable expansions.
pub const MAX_DRAKE_ORDER: usize = 8;

/// Exponents of `a1, a2, b1, b2` in one monomial of the inverse series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DrakeExponent {
    pub a1: u32,
    pub a2: u32,
    pub d1: u32,
    pub d2: u32,
}

impl DrakeExponent {
    pub fn new(a1: u32, a2: u32, d1: u32, d2: u32) -> Self {
        Self { a1, a2, d1, d2 }
    }

    /// The series index this monomial lives at.
    pub fn index(&self) -> usize {
        (self.a1 + self.a2 + self.d1 + self.d2 + 1) as usize
    }

    pub fn monomial(&self) -> Monomial {
        Monomial([self.a1, self.a2, self.d1, self.d2])
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        let [a1, a2, d1, d2] = m.0;
        Self { a1, a2, d1, d2 }
    }

    /// The exchange `a1 <-> b2`, `a2 <-> b1`.
    pub fn swapped(&self) -> Self {
        Self::new(self.d2, self.d1, self.a2, self.a1)
    }

    /// Every exponent tuple of total degree `d`.
    pub fn all_of_degree(d: u32) -> impl Iterator<Item = DrakeExponent> {
        (0..=d).flat_map(move |a1| {
            (0..=d - a1).flat_map(move |a2| {
                (0..=d - a1 - a2).map(move |d1| DrakeExponent::new(a1, a2, d1, d - a1 - a2 - d1))
            })
        })
    }
}

/// `(-1)^(n-1) (a1+a2)! (d1+d2)! C(a1+d1, a1) C(a2+d2, a2)`.
pub fn drake_closed_form(e: &DrakeExponent) -> BigInt {
    let magnitude = factorial(u64::from(e.a1 + e.a2))
        * factorial(u64::from(e.d1 + e.d2))
        * binomial(u64::from(e.a1 + e.d1), i64::from(e.a1))
        * binomial(u64::from(e.a2 + e.d2), i64::from(e.a2));
    if e.index() % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// The inverse series assembled monomial by monomial from
/// [`drake_closed_form`].
pub fn closed_form_series(order: usize) -> PolySeries {
    let mut s = PolySeries::zero(order);
    for n in 1..=order {
        let poly = MultiPoly::from_terms(DrakeExponent::all_of_degree(n as u32 - 1).map(|e| {
            (
                e.monomial(),
                ExactRational::from_integer(drake_closed_form(&e)),
            )
        }));
        s.set_coeff(n, poly);
    }
    s
}

fn var(v: Var) -> MultiPoly {
    MultiPoly::var(v)
}

/// `a1 b2 - a2 b1`.
fn cross_term() -> MultiPoly {
    var(Var::A1)
        .mul(&var(Var::B2))
        .sub(&var(Var::A2).mul(&var(Var::B1)))
}

/// `a1 - a2 - b1 + b2`.
fn linear_term() -> MultiPoly {
    var(Var::A1)
        .sub(&var(Var::A2))
        .sub(&var(Var::B1))
        .add(&var(Var::B2))
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_DRAKE_ORDER {
        return Err(Error::InvalidArgument(format!(
            "order {order} exceeds the four-variable cap of {MAX_DRAKE_ORDER}"
        )));
    }
    Ok(())
}

/// `log(1 + c x)` as an EGF: coefficient `n` is `(-1)^(n-1) (n-1)! c^n`.
fn log_one_plus(c: &MultiPoly, order: usize) -> PolySeries {
    let template = EgfSeries::<ExactRational>::log_one_plus_x(order);
    let mut s = PolySeries::zero(order);
    let mut c_pow = MultiPoly::one();
    for n in 1..=order {
        c_pow = c_pow.mul(c);
        s.set_coeff(n, c_pow.scale(template.coeff(n)));
    }
    s
}

/// Expansion of `log((1+a1 x)(1+b2 x)/((1+a2 x)(1+b1 x))) / ((a1 b2 - a2 b1) x + e)`
/// with `e = a1 - a2 - b1 + b2`.
///
/// Solves `D G = L` one coefficient at a time; since `(x G)_n = n G_{n-1}`,
/// `G_n = (L_n - n (a1 b2 - a2 b1) G_{n-1}) / e`, each an exact polynomial
/// division whose remainder must vanish.
pub fn drake_inverse_series(order: usize) -> Result<PolySeries> {
    check_order(order)?;
    let logs = log_one_plus(&var(Var::A1), order)
        .add(&log_one_plus(&var(Var::B2), order))?
        .sub(&log_one_plus(&var(Var::A2), order))?
        .sub(&log_one_plus(&var(Var::B1), order))?;
    let (cross, e) = (cross_term(), linear_term());
    let mut g = PolySeries::zero(order);
    for n in 1..=order {
        let carry = g.coeff(n - 1).mul(&cross).mul_integer(&BigInt::from(n));
        let numer = logs.coeff(n).sub(&carry);
        let quotient = numer.exact_div(&e).map_err(|err| match err {
            Error::NotDivisible { remainder } => Error::DrakeDivisibility { n, remainder },
            other => other,
        })?;
        g.set_coeff(n, quotient);
    }
    Ok(g)
}

/// `F = (1 + b1 F)(1 + a2 F) sum_{n>=1} ((a1 b2 - a2 b1) F + e)^(n-1) x^n/n!`.
pub fn drake_phi() -> PhiSpec<MultiPoly> {
    PhiSpec::new("drake-phi", |f: &PolySeries| {
        let order = f.order();
        let one = MultiPoly::one();
        let left = f.scale(&var(Var::B1)).add_constant(&one);
        let right = f.scale(&var(Var::A2)).add_constant(&one);
        let t = f.scale(&cross_term()).add_constant(&linear_term());
        let mut power = PolySeries::one(order);
        let mut sum = PolySeries::zero(order);
        for n in 1..=order {
            sum = sum.add(&power.mul(&PolySeries::basis(n, order))?)?;
            if n < order {
                power = power.mul(&t)?;
            }
        }
        left.mul(&right)?.mul(&sum)
    })
}

/// The series `F`, as the fixed point of [`drake_phi`].
pub fn solve_drake_f(order: usize) -> Result<PolySeries> {
    check_order(order)?;
    Ok(solve_fixed_point(&drake_phi(), order)?.solution)
}

/// Cross-multiplied check of the defining equation:
/// `(1+a1 F)(1+b2 F) = (1+a2 F)(1+b1 F) exp(x ((a1 b2 - a2 b1) F + e))`.
pub fn verify_drake_functional_eq(f: &PolySeries) -> Result<bool> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonZeroConstant {
            constant: f.coeff(0).to_string(),
        });
    }
    let order = f.order();
    let one = MultiPoly::one();
    let affine = |c: Var| f.scale(&var(c)).add_constant(&one);
    let lhs = affine(Var::A1).mul(&affine(Var::B2))?;
    let exponent =
        PolySeries::x(order).mul(&f.scale(&cross_term()).add_constant(&linear_term()))?;
    let rhs = affine(Var::A2)
        .mul(&affine(Var::B1))?
        .mul(&exponent.exp()?)?;
    Ok(lhs == rhs)
}

/// The point `a1 = b2 = 1`, `a2 = b1 = 0`.
pub fn k2_point() -> [ExactRational; 4] {
    [1i64, 0, 0, 1].map(ExactRational::from)
}

/// Evaluate every coefficient polynomial at `a1 = b2 = 1`, `a2 = b1 = 0`.
pub fn specialize_k2(s: &PolySeries) -> EgfSeries<ExactRational> {
    let point = k2_point();
    EgfSeries::from_coeffs(s.coeffs().iter().map(|p| p.eval(&point)).collect())
}

/// `(-1)^(n-1) sum_{i<n} i! (n-1-i)!`, the EGF coefficients of
/// `2 log(1+x)/(2+x)`.
pub fn inv_a2_coefficient(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("index must be at least 1".into()));
    }
    let n = n as u64;
    let sum: BigInt = (0..n).map(|i| factorial(i) * factorial(n - 1 - i)).sum();
    Ok(if n % 2 == 1 { sum } else { -sum })
}

/// Ordinary bivariate series in `u, v`, truncated at total degree `degree`.
///
/// `parts[d][i]` is the coefficient of `u^i v^(d-i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateSeries {
    parts: Vec<Vec<ExactRational>>,
}

impl BivariateSeries {
    pub fn degree(&self) -> usize {
        self.parts.len() - 1
    }

    /// Coefficient of `u^i v^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &ExactRational {
        &self.parts[i + j][i]
    }

    /// `sum i! j! / (i+j+1)! u^i v^j`.
    pub fn beta_moments(degree: usize) -> Self {
        let parts = (0..=degree)
            .map(|d| {
                let denom = factorial(d as u64 + 1);
                (0..=d)
                    .map(|i| {
                        let numer = factorial(i as u64) * factorial((d - i) as u64);
                        ExactRational::new(numer, denom.clone()).unwrap()
                    })
                    .collect()
            })
            .collect();
        Self { parts }
    }

    /// `(log(1-u) + log(1-v)) / (uv - u - v)`, solved degree by degree.
    ///
    /// The degree-`d+1` part of `R (uv - u - v) = N` reads
    /// `-(u+v) R_d + uv R_(d-1) = N_(d+1)`, so each `R_d` is an exact
    /// division of a homogeneous polynomial by `u + v`.
    pub fn log_quotient(degree: usize) -> Result<Self> {
        let mut parts: Vec<Vec<ExactRational>> = Vec::with_capacity(degree + 1);
        for d in 0..=degree {
            // uv R_{d-1} - N_{d+1}, a homogeneous form of degree d+1
            let mut p = vec![ExactRational::zero(); d + 2];
            if d >= 1 {
                for (i, c) in parts[d - 1].iter().enumerate() {
                    p[i + 1] = &p[i + 1] + c;
                }
            }
            // N_{d+1} = -(u^{d+1} + v^{d+1}) / (d+1)
            let log_coeff = ExactRational::new(1, d as i64 + 1)?;
            p[0] = &p[0] + &log_coeff;
            p[d + 1] = &p[d + 1] + &log_coeff;
            parts.push(divide_by_u_plus_v(&p)?);
        }
        Ok(Self { parts })
    }

    /// EGF coefficients `1..=degree+1` of `x * S(-x, -x)`.
    pub fn diagonal_egf(&self) -> Vec<ExactRational> {
        self.parts
            .iter()
            .enumerate()
            .map(|(d, part)| {
                let total = part.iter().fold(ExactRational::zero(), |acc, c| acc + c);
                let n = d as u64 + 1;
                let signed = if d % 2 == 0 { total } else { -total };
                Coefficient::mul_integer(&signed, &factorial(n))
            })
            .collect()
    }
}

/// Quotient of the homogeneous form `sum p_i u^i v^(d-i)` by `u + v`.
fn divide_by_u_plus_v(p: &[ExactRational]) -> Result<Vec<ExactRational>> {
    let d = p.len() - 1;
    let mut q = Vec::with_capacity(d);
    let mut prev = ExactRational::zero();
    for c in &p[..d] {
        let next = c - &prev;
        q.push(next.clone());
        prev = next;
    }
    let remainder = &p[d] - &prev;
    if !remainder.is_zero() {
        return Err(Error::NotDivisible {
            remainder: format!("{remainder}*u^{d}"),
        });
    }
    Ok(q)
}

/// `sum i! j!/(i+j+1)! u^i v^j = (log(1-u) + log(1-v)) / (uv - u - v)` through
/// total degree `degree`.
pub fn beta_series_identity(degree: usize) -> Result<bool> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    Ok(BivariateSeries::beta_moments(degree) == BivariateSeries::log_quotient(degree)?)
}
