//! The self-verification suite behind `verify-all`.
//!
//! Each check recomputes one family of identities from scratch and reports
//! the first discrepancy it finds. `quick` halves the orders.

use std::fmt;
use std::time::{Duration, Instant};

use hurwitz::am::{
    a2_inverse_direct, inverse_closed_form, m_direct_row, m_series_gf, reduction_factor,
};
use hurwitz::combinat::count_alternating_trees;
use hurwitz::drake::{
    beta_series_identity, drake_closed_form, drake_inverse_series, inv_a2_coefficient,
    solve_drake_f, specialize_k2, verify_drake_functional_eq, BivariateSeries, DrakeExponent,
};
use hurwitz::fixpoint::tree_series;
use hurwitz::{EgfSeries, ExactRational, MultiPoly};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Series = EgfSeries<ExactRational>;
type CheckResult = Result<(), String>;

pub struct Check {
    pub name: &'static str,
    run: fn(bool) -> CheckResult,
}

pub const CHECKS: [Check; 10] = [
    Check {
        name: "theorem-sweep",
        run: theorem_sweep,
    },
    Check {
        name: "genocchi-tri-route",
        run: genocchi_tri_route,
    },
    Check {
        name: "tree-oracle",
        run: tree_oracle,
    },
    Check {
        name: "inverse-closed-form",
        run: inverse_consistency,
    },
    Check {
        name: "factorial-sum",
        run: factorial_sum,
    },
    Check {
        name: "drake-closed-form",
        run: drake_closed_form_check,
    },
    Check {
        name: "drake-fixed-point",
        run: drake_fixed_point,
    },
    Check {
        name: "beta-identity",
        run: beta_identity,
    },
    Check {
        name: "reduction-theorem",
        run: reduction_theorem,
    },
    Check {
        name: "hurwitz-closure",
        run: hurwitz_closure,
    },
];

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub result: CheckResult,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let secs = self.elapsed.as_secs_f64();
        match &self.result {
            Ok(()) => write!(f, "PASS  {:<20} ({secs:.2}s)", self.name),
            Err(why) => write!(f, "FAIL  {:<20} ({secs:.2}s)  {why}", self.name),
        }
    }
}

impl Check {
    pub fn run(&self, quick: bool) -> CheckOutcome {
        let start = Instant::now();
        let result = (self.run)(quick);
        CheckOutcome {
            name: self.name,
            result,
            elapsed: start.elapsed(),
        }
    }
}

/// Run every check in [`CHECKS`] order. Checks run one at a time so the
/// reported timings are not inflated by contention.
pub fn run_all(quick: bool) -> Vec<CheckOutcome> {
    CHECKS.iter().map(|c| c.run(quick)).collect()
}

fn halve(n: usize, quick: bool) -> usize {
    if quick {
        n / 2
    } else {
        n
    }
}

fn fail(e: impl fmt::Display) -> String {
    e.to_string()
}

fn grid() -> impl Iterator<Item = (i64, i64)> {
    (-8..=8).flat_map(|h| (-8..=8).filter(|&k| k != 0).map(move |k| (h, k)))
}

fn theorem_sweep(quick: bool) -> CheckResult {
    let order = halve(32, quick);
    for (h, k) in grid() {
        let gf = m_series_gf(h, k, order).map_err(fail)?;
        let direct = m_direct_row(h, k, order).map_err(fail)?;
        for (n, (a, b)) in gf.coeffs().iter().zip(&direct).enumerate() {
            if a != b {
                return Err(format!("M_{n}({h},{k}): series {a} vs direct {b}"));
            }
            if !a.is_integer() {
                return Err(format!("M_{n}({h},{k}) = {a} is not an integer"));
            }
        }
    }
    Ok(())
}

/// EGF coefficients of `2x / (e^x + 1)` by ordinary power-series division.
pub fn genocchi_by_division(order: usize) -> Vec<ExactRational> {
    let mut fact = vec![BigInt::from(1)];
    for n in 1..=order {
        let next = &fact[n - 1] * BigInt::from(n);
        fact.push(next);
    }
    let denom: Vec<ExactRational> = (0..=order)
        .map(|n| {
            let base = ExactRational::new(1, fact[n].clone()).unwrap();
            if n == 0 {
                base + ExactRational::one()
            } else {
                base
            }
        })
        .collect();
    let mut quotient: Vec<ExactRational> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = if n == 1 {
            ExactRational::from(2)
        } else {
            ExactRational::zero()
        };
        for j in 1..=n {
            acc = acc - &denom[j] * &quotient[n - j];
        }
        quotient.push(acc.checked_div(&denom[0]).unwrap());
    }
    quotient
        .into_iter()
        .zip(fact)
        .map(|(c, f)| c * ExactRational::from(f))
        .collect()
}

fn genocchi_tri_route(quick: bool) -> CheckResult {
    let order = halve(16, quick);
    let gf = m_series_gf(1, 2, order).map_err(fail)?;
    let via_trees = tree_series(2, order)
        .and_then(|a| a.comp_inverse())
        .and_then(|i| i.subst_exp_minus_one())
        .map_err(fail)?;
    let via_log = a2_inverse_direct(order)
        .and_then(|i| i.subst_exp_minus_one())
        .map_err(fail)?;
    let oracle = Series::from_coeffs(genocchi_by_division(order));
    if gf != via_trees {
        return Err(format!(
            "series route differs from inverted tree series: {gf:?} vs {via_trees:?}"
        ));
    }
    if gf != via_log {
        return Err(format!(
            "series route differs from 2log(1+x)/(2+x) route: {gf:?} vs {via_log:?}"
        ));
    }
    if gf != oracle {
        return Err(format!(
            "series route differs from division oracle: {gf:?} vs {oracle:?}"
        ));
    }
    let first = Series::from_i64s(&[0, 1, -1, 0, 1, 0, -3, 0, 17]);
    if gf.truncate(8).map_err(fail)? != first {
        return Err(format!("first nine values {gf:?}"));
    }
    Ok(())
}

fn tree_oracle(quick: bool) -> CheckResult {
    let max_n = if quick { 5 } else { 7 };
    let a = tree_series(2, max_n).map_err(fail)?;
    for n in 1..=max_n {
        let count = count_alternating_trees(n + 1).map_err(fail)?;
        if a.coeff(n) != &ExactRational::from(count.clone()) {
            return Err(format!(
                "a_{n} = {} but {} alternating trees on {} vertices",
                a.coeff(n),
                count,
                n + 1
            ));
        }
    }
    Ok(())
}

fn inverse_consistency(quick: bool) -> CheckResult {
    let order = halve(24, quick);
    for k in 1..=6 {
        let inv = tree_series(k, order)
            .and_then(|a| a.comp_inverse())
            .map_err(fail)?;
        let closed = inverse_closed_form(k, order).map_err(fail)?;
        if let Some(n) = inv.first_difference(&closed) {
            return Err(format!("k={k}: inverse and closed form differ at n={n}"));
        }
        if let Some(n) = inv.integrality_check().first_fail_index() {
            return Err(format!("k={k}: coefficient {n} is not an integer"));
        }
    }
    Ok(())
}

fn factorial_sum(quick: bool) -> CheckResult {
    let order = halve(20, quick);
    let inv = tree_series(2, order)
        .and_then(|a| a.comp_inverse())
        .map_err(fail)?;
    for n in 1..=order {
        let formula = ExactRational::from(inv_a2_coefficient(n).map_err(fail)?);
        if inv.coeff(n) != &formula {
            return Err(format!(
                "n={n}: inverse has {}, formula gives {formula}",
                inv.coeff(n)
            ));
        }
    }
    Ok(())
}

fn drake_closed_form_check(quick: bool) -> CheckResult {
    let order = halve(8, quick);
    let g = drake_inverse_series(order).map_err(fail)?;
    for n in 1..=order {
        let poly: &MultiPoly = g.coeff(n);
        if !poly.is_homogeneous_of_degree(n as u32 - 1) {
            return Err(format!(
                "coefficient {n} is not homogeneous of degree {}",
                n - 1
            ));
        }
        let exponents: Vec<_> = DrakeExponent::all_of_degree(n as u32 - 1).collect();
        for e in &exponents {
            let expected = ExactRational::from(drake_closed_form(e));
            let found = poly.coeff(&e.monomial());
            if found != expected {
                return Err(format!(
                    "n={n}, {e:?}: expansion {found}, closed form {expected}"
                ));
            }
        }
        if poly.len() != exponents.len() {
            return Err(format!(
                "coefficient {n} has {} terms, expected {}",
                poly.len(),
                exponents.len()
            ));
        }
    }
    let special = specialize_k2(&g);
    for n in 1..=order {
        let expected = ExactRational::from(inv_a2_coefficient(n).map_err(fail)?);
        if special.coeff(n) != &expected {
            return Err(format!(
                "k=2 specialization at n={n}: {} vs {expected}",
                special.coeff(n)
            ));
        }
    }
    Ok(())
}

fn drake_fixed_point(quick: bool) -> CheckResult {
    let order = halve(8, quick);
    let f = solve_drake_f(order).map_err(fail)?;
    if let Some(n) = f.integrality_check().first_fail_index() {
        return Err(format!("coefficient {n} has a non-integer coefficient"));
    }
    if !verify_drake_functional_eq(&f).map_err(fail)? {
        return Err("fixed point does not satisfy the functional equation".into());
    }
    let g = drake_inverse_series(order).map_err(fail)?;
    let composed = g.compose(&f).map_err(fail)?;
    if composed != EgfSeries::x(order) {
        return Err(format!("inverse composed with F is not x: {composed:?}"));
    }
    Ok(())
}

fn beta_identity(quick: bool) -> CheckResult {
    let degree = halve(10, quick);
    if !beta_series_identity(degree).map_err(fail)? {
        return Err(format!("series identity fails below degree {degree}"));
    }
    let max_n = halve(12, quick);
    let diagonal = BivariateSeries::log_quotient(max_n - 1)
        .map_err(fail)?
        .diagonal_egf();
    for (i, v) in diagonal.iter().enumerate() {
        let n = i + 1;
        let expected = ExactRational::from(inv_a2_coefficient(n).map_err(fail)?);
        if *v != expected {
            return Err(format!("diagonal coefficient {n}: {v} vs {expected}"));
        }
    }
    Ok(())
}

fn reduction_theorem(quick: bool) -> CheckResult {
    let order = halve(32, quick);
    for (h, k) in grid() {
        let q = reduction_factor(h, k, order).map_err(fail)?;
        if let Some(n) = q.integrality_check().first_fail_index() {
            return Err(format!(
                "Q({h},{k}) coefficient {n} = {} is not an integer",
                q.coeff(n)
            ));
        }
        let base = m_series_gf(1, k.abs(), order).map_err(fail)?;
        let target = m_series_gf(h, k, order).map_err(fail)?;
        if q.mul(&base).map_err(fail)? != target {
            return Err(format!("Q * gf(1,{}) != gf({h},{k})", k.abs()));
        }
    }
    Ok(())
}

fn random_series(rng: &mut StdRng, order: usize, zero_constant: bool, unit_slope: bool) -> Series {
    let mut v: Vec<i64> = (0..=order).map(|_| rng.gen_range(-5..=5)).collect();
    if zero_constant {
        v[0] = 0;
    }
    if unit_slope && order >= 1 {
        v[1] = 1;
    }
    Series::from_i64s(&v)
}

fn hurwitz_closure(quick: bool) -> CheckResult {
    let order = halve(12, quick);
    let mut rng = StdRng::seed_from_u64(0x0048_7572_7769_747a);
    for i in 0..200 {
        let f = random_series(&mut rng, order, false, false);
        let g = random_series(&mut rng, order, true, false);
        let u = random_series(&mut rng, order, true, true);
        let checks = [
            ("product", f.mul(&g)),
            ("composition", f.compose(&g)),
            ("inverse", u.comp_inverse()),
        ];
        for (what, s) in checks {
            let s = s.map_err(fail)?;
            if let Some(n) = s.integrality_check().first_fail_index() {
                return Err(format!(
                    "instance {i}: {what} coefficient {n} = {} is not an integer",
                    s.coeff(n)
                ));
            }
        }
    }
    Ok(())
}
