//! Order-by-order fixed points `A = Phi(A)` of x-adic contractions.
//!
//! The main instance is
//!
//! ```text
//! A = sum_{n>=1} p_k(A)^(n-1) x^n/n!,   p_k(u) = sum_{j=1..k} C(k, j) u^(j-1)
//! ```
//!
//! whose form makes integrality of `A` evident, together with checks that the
//! solution also satisfies the exponential forms `(1+A)^k = e^{x p_k(A)}` and
//! (for `k = 2`) `1 + A = e^{(x/2)(2+A)}`.

use std::fmt;

use num_bigint::BigInt;

use crate::coeffring::{binomial, Coefficient, ExactRational};
use crate::egf::EgfSeries;
use crate::{Error, Result};

type PhiFn<C> = dyn Fn(&EgfSeries<C>) -> Result<EgfSeries<C>> + Send + Sync;

/// The right-hand side `Phi` of a functional equation `A = Phi(A)`.
///
/// Coefficient `n` of `Phi(A)` must depend only on coefficients `0..n` of `A`;
/// the solver checks this as it iterates.
pub struct PhiSpec<C> {
    name: String,
    apply: Box<PhiFn<C>>,
}

impl<C: Coefficient> PhiSpec<C> {
    pub fn new(
        name: impl Into<String>,
        apply: impl Fn(&EgfSeries<C>) -> Result<EgfSeries<C>> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            apply: Box::new(apply),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, a: &EgfSeries<C>) -> Result<EgfSeries<C>> {
        (self.apply)(a)
    }
}

impl<C> fmt::Debug for PhiSpec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiSpec")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixpointResult<C> {
    pub solution: EgfSeries<C>,
    /// Number of applications of `Phi` that changed the iterate.
    pub iterations: usize,
    pub stabilized: bool,
}

/// `p_k(A) = sum_{j=1..k} C(k, j) A^(j-1)`, evaluated by Horner's rule.
pub fn pk_of_series<C: Coefficient>(k: u32, a: &EgfSeries<C>) -> Result<EgfSeries<C>> {
    if k == 0 {
        return Err(Error::InvalidArgument("p_k needs k >= 1".into()));
    }
    let order = a.order();
    let c = |j: u32| C::from_integer(&binomial(k as u64, j as i64));
    let mut acc = EgfSeries::constant(c(k), order);
    for j in (1..k).rev() {
        acc = acc.mul(a)?.add_constant(&c(j));
    }
    Ok(acc)
}

/// Iterate `A <- Phi(A)` from the zero series until `A = Phi(A)` holds exactly
/// through `order`.
///
/// After `m` applications the coefficients `0..m-1` of a contraction are
/// final; any later change there, or failure to settle within `order + 1`
/// rounds, is reported as [`Error::NotContraction`].
pub fn solve_fixed_point<C: Coefficient>(
    phi: &PhiSpec<C>,
    order: usize,
) -> Result<FixpointResult<C>> {
    let mut current = EgfSeries::zero(order);
    let mut iterations = 0;
    loop {
        let next = phi.apply(&current)?;
        if next.order() != order {
            return Err(Error::OrderMismatch {
                left: order,
                right: next.order(),
            });
        }
        if next == current {
            return Ok(FixpointResult {
                solution: current,
                iterations,
                stabilized: true,
            });
        }
        iterations += 1;
        if iterations > order + 1 {
            return Err(Error::NotContraction(format!(
                "{} did not stabilize after {} iterations",
                phi.name(),
                order + 1
            )));
        }
        // coefficients 0..iterations-2 were settled by the previous round
        let settled = iterations.saturating_sub(1).min(order + 1);
        if let Some(n) = (0..settled).find(|&n| next.coeff(n) != current.coeff(n)) {
            return Err(Error::NotContraction(format!(
                "{}: coefficient {n} changed at iteration {iterations}",
                phi.name()
            )));
        }
        current = next;
    }
}

/// `Phi(A) = sum_{n=1..N} p_k(A)^(n-1) x^n/n!`.
pub fn am_phi<C: Coefficient + 'static>(k: u32) -> Result<PhiSpec<C>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    Ok(PhiSpec::new(
        format!("am-phi(k={k})"),
        move |a: &EgfSeries<C>| {
            let order = a.order();
            let p = pk_of_series(k, a)?;
            let mut power = EgfSeries::one(order);
            let mut acc = EgfSeries::zero(order);
            for n in 1..=order {
                acc = acc.add(&power.mul(&EgfSeries::basis(n, order))?)?;
                if n < order {
                    power = power.mul(&p)?;
                }
            }
            Ok(acc)
        },
    ))
}

/// The solution `A` of `(1+A)^k = e^{x p_k(A)}` through `order`.
pub fn tree_series(k: u32, order: usize) -> Result<EgfSeries<ExactRational>> {
    Ok(solve_fixed_point(&am_phi(k)?, order)?.solution)
}

/// Checks `(1+A)^k = exp(x p_k(A))` and, with `B = 1 + A`,
/// `B = exp(x (1 + B + ... + B^(k-1)) / k)`.
pub fn verify_exp_form(a: &EgfSeries<ExactRational>, k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if !a.coeff(0).is_zero() {
        return Err(Error::NonZeroConstant {
            constant: a.coeff(0).to_string(),
        });
    }
    let order = a.order();
    let x = EgfSeries::x(order);
    let b = a.add_constant(&ExactRational::one());

    let lhs = b.pow(k)?;
    let rhs = x.mul(&pk_of_series(k, a)?)?.exp()?;
    if lhs != rhs {
        return Ok(false);
    }

    let mut geometric = EgfSeries::zero(order);
    let mut power = EgfSeries::one(order);
    for _ in 0..k {
        geometric = geometric.add(&power)?;
        power = power.mul(&b)?;
    }
    let exponent = x
        .mul(&geometric)?
        .scale_rational(&ExactRational::new(1, k as i64)?);
    Ok(b == exponent.exp()?)
}

/// Checks `1 + A = exp((x/2)(2 + A))`.
pub fn verify_postnikov_form(a: &EgfSeries<ExactRational>) -> Result<bool> {
    let order = a.order();
    let two = ExactRational::from_integer(BigInt::from(2));
    let exponent = EgfSeries::x(order)
        .mul(&a.add_constant(&two))?
        .scale_rational(&ExactRational::new(1, 2)?);
    Ok(a.add_constant(&ExactRational::one()) == exponent.exp()?)
}
