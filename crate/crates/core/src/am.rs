//! Bernoulli polynomials, Almkvist–Meurman numbers and the integrality
//! certificate.
//!
//! `M_n(h, k)` is computed two ways: as the EGF coefficients of
//! `k x (e^{hx} - 1) / (e^{kx} - 1)` ([`m_series_gf`]) and as
//! `k^n (B_n(h/k) - B_n)` ([`m_direct`]). [`am_certify`] replays the
//! fixed-point / inversion / substitution chain for `(1, |k|)` and the reduction
//! from `(h, k)` to `(1, |k|)`, recording an integrality report per step.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::coeffring::{binomial_row, Coefficient, ExactRational};
use crate::egf::{EgfSeries, IntegralityReport};
use crate::fixpoint::tree_series;
use crate::{Error, Result};

type Series = EgfSeries<ExactRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmParams {
    h: i64,
    k: i64,
    order: usize,
}

impl AmParams {
    pub fn new(h: i64, k: i64, order: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        Ok(Self { h, k, order })
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// `B_0..=B_N`, the EGF coefficients of `x / (e^x - 1)`.
pub fn bernoulli_numbers(order: usize) -> Series {
    let em1 = Series::exp_line(&BigInt::from(1), order + 1).add_constant(&ExactRational::from(-1));
    em1.div_by_x()
        .and_then(|f| f.reciprocal())
        .expect("(e^x - 1)/x has constant term 1")
}

/// Precomputed Bernoulli numbers for repeated polynomial evaluation.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    numbers: Series,
}

impl BernoulliTable {
    pub fn new(order: usize) -> Self {
        Self {
            numbers: bernoulli_numbers(order),
        }
    }

    pub fn order(&self) -> usize {
        self.numbers.order()
    }

    pub fn number(&self, n: usize) -> &ExactRational {
        self.numbers.coeff(n)
    }

    /// `B_n(q)`: coefficient `n` of `e^{qx} * x/(e^x - 1)`, i.e.
    /// `sum_j C(n, j) B_j q^(n-j)`.
    pub fn poly_at(&self, n: usize, q: &ExactRational) -> Result<ExactRational> {
        if n > self.order() {
            return Err(Error::OrderTooSmall {
                order: self.order(),
            });
        }
        let row = binomial_row(n);
        let mut acc = ExactRational::zero();
        let mut q_pow = ExactRational::one();
        for j in (0..=n).rev() {
            let b = self.numbers.coeff(j);
            if !b.is_zero() {
                acc = acc + Coefficient::mul_integer(&(b * &q_pow), &row[j]);
            }
            q_pow = q_pow * q;
        }
        Ok(acc)
    }
}

/// `B_n(q)` via the product series `e^{qx} * x/(e^x - 1)`.
pub fn bernoulli_poly_at(n: usize, q: &ExactRational) -> ExactRational {
    let line = Series::exp_line_rational(q, n);
    line.mul(&bernoulli_numbers(n))
        .expect("equal orders")
        .coeff(n)
        .clone()
}

/// `k x (e^{hx} - 1) / (e^{kx} - 1)` through `order`; coefficient `n` is
/// `M_n(h, k)`. Works for any nonzero `k`, negative included.
pub fn m_series_gf(h: i64, k: i64, order: usize) -> Result<Series> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let minus_one = ExactRational::from(-1);
    let numer = Series::exp_line(&BigInt::from(h), order).add_constant(&minus_one);
    let denom = Series::exp_line(&BigInt::from(k), order + 1)
        .add_constant(&minus_one)
        .div_by_x()?;
    Ok(numer
        .mul(&denom.reciprocal()?)?
        .scale(&ExactRational::from(k)))
}

/// `k^n (B_n(h/k) - B_n)`.
pub fn m_direct(n: usize, h: i64, k: i64) -> Result<ExactRational> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let u = ExactRational::new(h, k)?;
    let value = bernoulli_poly_at(n, &u) - bernoulli_poly_at(n, &ExactRational::zero());
    Ok(ExactRational::from(k).pow(n as u32) * value)
}

/// `m_direct(n, h, k)` for `n = 0..=order`, sharing one Bernoulli table.
pub fn m_direct_row(h: i64, k: i64, order: usize) -> Result<Vec<ExactRational>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let table = BernoulliTable::new(order);
    let u = ExactRational::new(h, k)?;
    let k = ExactRational::from(k);
    let mut k_pow = ExactRational::one();
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        out.push(&k_pow * &(table.poly_at(n, &u)? - table.number(n)));
        k_pow = k_pow * &k;
    }
    Ok(out)
}

/// `Q` with `Q * gf(1, |k|) = gf(h, k)`, where `gf` is [`m_series_gf`].
pub fn reduction_factor(h: i64, k: i64, order: usize) -> Result<Series> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let target = m_series_gf(h, k, order + 1)?.div_by_x()?;
    let base = m_series_gf(1, k.abs(), order + 1)?.div_by_x()?;
    target.mul(&base.reciprocal()?)
}

/// Direct expansion of `k x log(1+x) / ((1+x)^k - 1)`, `k >= 1`.
pub fn inverse_closed_form(k: u32, order: usize) -> Result<Series> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if order == 0 {
        return Ok(Series::zero(0));
    }
    let one_plus_x = Series::one(order).add(&Series::x(order))?;
    let log_over_x = one_plus_x.log()?.div_by_x()?;
    let power_over_x = one_plus_x
        .pow(k)?
        .add_constant(&ExactRational::from(-1))
        .div_by_x()?;
    let ratio = log_over_x.mul(&power_over_x.reciprocal()?)?;
    Ok(ratio.mul_by_x().scale(&ExactRational::from(i64::from(k))))
}

/// Direct expansion of `2 log(1+x) / (2+x)`.
pub fn a2_inverse_direct(order: usize) -> Result<Series> {
    let two = ExactRational::from(2);
    let log = Series::log_one_plus_x(order).scale(&two);
    let denom = Series::x(order).add_constant(&two);
    log.mul(&denom.reciprocal()?)
}

/// Named stages of the certificate, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    ReductionFactor,
    TreeSeries,
    CompInverse,
    SubstExp,
    FinalEquality,
}

impl Step {
    pub const ALL: [Step; 5] = [
        Step::ReductionFactor,
        Step::TreeSeries,
        Step::CompInverse,
        Step::SubstExp,
        Step::FinalEquality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Step::ReductionFactor => "reduction-factor",
            Step::TreeSeries => "tree-series",
            Step::CompInverse => "comp-inverse",
            Step::SubstExp => "subst-exp",
            Step::FinalEquality => "final-equality",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Step::ALL
            .into_iter()
            .find(|step| step.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown step {s:?}")))
    }
}

/// Outcome of one certificate step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: Step,
    pub report: IntegralityReport<ExactRational>,
    /// First coefficient where the step's series disagrees with its
    /// independent counterpart, with the computed value there.
    pub mismatch: Option<(usize, ExactRational)>,
}

impl StepRecord {
    fn new(step: Step, series: &Series, reference: Option<&Series>) -> Self {
        let mismatch = reference
            .and_then(|r| series.first_difference(r))
            .map(|n| (n, series.coeffs().get(n).cloned().unwrap_or_default()));
        Self {
            step,
            report: series.integrality_check(),
            mismatch,
        }
    }

    pub fn passed(&self) -> bool {
        self.report.is_integral() && self.mismatch.is_none()
    }
}

impl fmt::Display for StepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failure = match (self.report.first_fail_index(), &self.mismatch) {
            (Some(n), _) => Some((n, self.report.fail_value().cloned().unwrap_or_default())),
            (None, Some((n, v))) => Some((*n, v.clone())),
            (None, None) => None,
        };
        match failure {
            None => write!(f, "{}: OK", self.step),
            Some((n, v)) => write!(f, "{}: FAIL at n={n}, value={v}", self.step),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralityCertificate {
    pub params: AmParams,
    pub steps: Vec<StepRecord>,
    pub final_equality: bool,
}

impl IntegralityCertificate {
    pub fn is_valid(&self) -> bool {
        self.final_equality && self.steps.iter().all(StepRecord::passed)
    }

    pub fn failing_step(&self) -> Option<Step> {
        self.steps.iter().find(|s| !s.passed()).map(|s| s.step)
    }
}

/// `step-name: OK|FAIL at n=.., value=..` per step, then `CERTIFIED` or
/// `REFUTED`.
impl fmt::Display for IntegralityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        writeln!(
            f,
            "{}",
            if self.is_valid() {
                "CERTIFIED"
            } else {
                "REFUTED"
            }
        )
    }
}

/// Run the integrality chain for `(h, k)` through `order`.
pub fn am_certify(h: i64, k: i64, order: usize) -> Result<IntegralityCertificate> {
    am_certify_with_fault(h, k, order, None)
}

/// As [`am_certify`], but adds `1/2` to one coefficient of the named step's
/// output. Used to exercise the refutation path.
pub fn am_certify_with_fault(
    h: i64,
    k: i64,
    order: usize,
    fault: Option<Step>,
) -> Result<IntegralityCertificate> {
    let params = AmParams::new(h, k, order)?;
    if order == 0 {
        return Err(Error::InvalidArgument(
            "certificate order must be at least 1".into(),
        ));
    }
    let abs_k = k.unsigned_abs();
    let abs_k32 =
        u32::try_from(abs_k).map_err(|_| Error::InvalidArgument("|k| too large".into()))?;
    let inject = |step: Step, s: Series| -> Series {
        if fault != Some(step) {
            return s;
        }
        let n = order.min(2);
        let mut s = s;
        s.set_coeff(n, s.coeff(n) + &ExactRational::new(1, 2).unwrap());
        s
    };

    let gf_hk = m_series_gf(h, k, order)?;
    let gf_base = m_series_gf(1, abs_k as i64, order)?;
    let mut steps = Vec::with_capacity(Step::ALL.len());

    let q = inject(Step::ReductionFactor, reduction_factor(h, k, order)?);
    steps.push(StepRecord::new(Step::ReductionFactor, &q, None));

    let a = inject(Step::TreeSeries, tree_series(abs_k32, order)?);
    steps.push(StepRecord::new(Step::TreeSeries, &a, None));

    let inv = inject(Step::CompInverse, a.comp_inverse()?);
    let closed = inverse_closed_form(abs_k32, order)?;
    steps.push(StepRecord::new(Step::CompInverse, &inv, Some(&closed)));

    let g = inject(Step::SubstExp, inv.subst_exp_minus_one()?);
    steps.push(StepRecord::new(Step::SubstExp, &g, Some(&gf_base)));

    let product = inject(Step::FinalEquality, q.mul(&g)?);
    let mut last = StepRecord::new(Step::FinalEquality, &product, Some(&gf_hk));
    if last.mismatch.is_none() {
        let direct = Series::from_coeffs(m_direct_row(h, k, order)?);
        last.mismatch = gf_hk
            .first_difference(&direct)
            .map(|n| (n, gf_hk.coeff(n).clone()));
    }
    let final_equality = last.passed();
    steps.push(last);

    Ok(IntegralityCertificate {
        params,
        steps,
        final_equality,
    })
}
