//! Acceptance criteria, one test per criterion.
//!
//! Each test prints a single `PASS`/`FAIL` line with its wall time and
//! asserts the runtime budget. The tests share a lock so timings are not
//! distorted by running side by side. Oracles that can be written
//! independently of the library (Bernoulli polynomials from the textbook
//! recurrence, ordinary power-series expansions, brute-force enumeration over
//! edge sets) live in this file.

use std::process::Command;
use std::sync::Mutex;
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
use hurwitz::{EgfSeries, ExactRational};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Series = EgfSeries<ExactRational>;

static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(id: u32, name: &str, budget_secs: u64, body: impl FnOnce()) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let within = elapsed <= Duration::from_secs(budget_secs);
    let status = if result.is_ok() && within {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "criterion {id:>2} {status} {name} ({:.2}s, budget {budget_secs}s)",
        elapsed.as_secs_f64()
    );
    if let Err(panic) = result {
        std::panic::resume_unwind(panic);
    }
    assert!(
        within,
        "criterion {id} took {elapsed:?}, budget {budget_secs}s"
    );
}

fn q(n: i64) -> ExactRational {
    ExactRational::from(n)
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::from(1)];
    for i in 1..=n {
        let next = &f[i - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::from(1); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// B_0..=B_n from sum_{j<=m} C(m+1, j) B_j = 0.
fn bernoulli(n: usize) -> Vec<ExactRational> {
    let c = binomial_rows(n + 1);
    let mut b = vec![q(1)];
    for m in 1..=n {
        let mut acc = ExactRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc = acc + ExactRational::from(c[m + 1][j].clone()) * bj;
        }
        b.push(-acc * ExactRational::new(1, (m + 1) as i64).unwrap());
    }
    b
}

/// k^n (B_n(h/k) - B_n) with B_n(x) = sum_j C(n, j) B_j x^(n-j).
fn am_oracle(
    h: i64,
    k: i64,
    order: usize,
    b: &[ExactRational],
    c: &[Vec<BigInt>],
) -> Vec<ExactRational> {
    let x = ExactRational::new(h, k).unwrap();
    (0..=order)
        .map(|n| {
            let mut poly = ExactRational::zero();
            for j in 0..=n {
                poly = poly + ExactRational::from(c[n][j].clone()) * &b[j] * x.pow((n - j) as u32);
            }
            (poly - &b[n]) * q(k).pow(n as u32)
        })
        .collect()
}

/// EGF coefficients of 2x/(e^x + 1) by ordinary power-series division.
fn genocchi_division(order: usize) -> Vec<ExactRational> {
    let f = factorials(order);
    let d: Vec<ExactRational> = (0..=order)
        .map(|n| ExactRational::new(1, f[n].clone()).unwrap() + if n == 0 { q(1) } else { q(0) })
        .collect();
    let mut quo: Vec<ExactRational> = Vec::new();
    for n in 0..=order {
        let mut acc = if n == 1 { q(2) } else { q(0) };
        for j in 1..=n {
            acc = acc - &d[j] * &quo[n - j];
        }
        quo.push(acc.checked_div(&d[0]).unwrap());
    }
    quo.into_iter()
        .zip(f)
        .map(|(c, f)| c * ExactRational::from(f))
        .collect()
}

/// EGF coefficients 1..=order of 2 log(1+x)/(2+x), as an ordinary product.
fn inv_a2_oracle(order: usize) -> Vec<ExactRational> {
    let f = factorials(order);
    let log: Vec<ExactRational> = (0..=order)
        .map(|n| {
            if n == 0 {
                q(0)
            } else {
                ExactRational::new(if n % 2 == 1 { 1 } else { -1 }, n as i64).unwrap()
            }
        })
        .collect();
    let half = ExactRational::new(1, 2).unwrap();
    let recip: Vec<ExactRational> = (0..=order)
        .map(|j| half.pow(j as u32 + 1) * q(if j % 2 == 0 { 1 } else { -1 }))
        .collect();
    (1..=order)
        .map(|n| {
            let mut acc = ExactRational::zero();
            for i in 1..=n {
                acc = acc + &log[i] * &recip[n - i];
            }
            acc * q(2) * ExactRational::from(f[n].clone())
        })
        .collect()
}

/// The same coefficients from (-1)^(n-1) sum_i i! (n-i-1)!.
fn factorial_sum_oracle(n: usize) -> BigInt {
    let f = factorials(n);
    let s: BigInt = (0..n).map(|i| &f[i] * &f[n - i - 1]).sum();
    if n % 2 == 1 {
        s
    } else {
        -s
    }
}

/// Alternating trees on vertices 0..m by scanning every (m-1)-edge subset of
/// K_m and keeping the acyclic ones.
fn alternating_trees_by_edge_subsets(m: usize) -> u64 {
    if m == 1 {
        return 1;
    }
    let edges: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    let mut pick = Vec::new();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    fn rec(
        edges: &[(usize, usize)],
        start: usize,
        need: usize,
        m: usize,
        pick: &mut Vec<usize>,
        count: &mut u64,
    ) {
        if need == 0 {
            let mut parent: Vec<usize> = (0..m).collect();
            for &e in pick.iter() {
                let (a, b) = edges[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return;
                }
                parent[ra] = rb;
            }
            // every vertex is below all its neighbours or above all of them
            let ok = (0..m).all(|v| {
                let nb: Vec<usize> = pick
                    .iter()
                    .filter_map(|&e| match edges[e] {
                        (a, b) if a == v => Some(b),
                        (a, b) if b == v => Some(a),
                        _ => None,
                    })
                    .collect();
                nb.iter().all(|&w| w > v) || nb.iter().all(|&w| w < v)
            });
            if ok {
                *count += 1;
            }
            return;
        }
        for e in start..edges.len() {
            pick.push(e);
            rec(edges, e + 1, need - 1, m, pick, count);
            pick.pop();
        }
    }
    rec(&edges, 0, m - 1, m, &mut pick, &mut count);
    count
}

fn grid() -> impl Iterator<Item = (i64, i64)> {
    (-8..=8).flat_map(|h| (-8..=8).filter(|&k| k != 0).map(move |k| (h, k)))
}

#[test]
fn criterion_01_theorem_sweep() {
    criterion(1, "theorem sweep", 60, || {
        let b = bernoulli(32);
        let c = binomial_rows(32);
        for (h, k) in grid() {
            let gf = m_series_gf(h, k, 32).unwrap();
            let direct = m_direct_row(h, k, 32).unwrap();
            let oracle = am_oracle(h, k, 32, &b, &c);
            assert_eq!(gf.coeffs(), &direct[..], "h={h} k={k}");
            assert_eq!(gf.coeffs(), &oracle[..], "h={h} k={k}");
            for (n, m) in gf.coeffs().iter().enumerate() {
                assert!(m.is_integer(), "M_{n}({h},{k}) = {m}");
            }
        }
    });
}

#[test]
fn criterion_02_genocchi_tri_route() {
    criterion(2, "Genocchi tri-route", 1, || {
        let gf = m_series_gf(1, 2, 16).unwrap();
        let via_inverse = tree_series(2, 16)
            .unwrap()
            .comp_inverse()
            .unwrap()
            .subst_exp_minus_one()
            .unwrap();
        let via_direct = a2_inverse_direct(16)
            .unwrap()
            .subst_exp_minus_one()
            .unwrap();
        let oracle = genocchi_division(16);
        assert_eq!(gf, via_inverse);
        assert_eq!(gf, via_direct);
        assert_eq!(gf.coeffs(), &oracle[..]);
        let first: Vec<_> = [0, 1, -1, 0, 1, 0, -3, 0, 17].into_iter().map(q).collect();
        assert_eq!(&gf.coeffs()[..9], &first[..]);
    });
}

#[test]
fn criterion_03_tree_oracle() {
    criterion(3, "tree oracle", 60, || {
        let a = tree_series(2, 7).unwrap();
        for n in 1..=7 {
            let count = count_alternating_trees(n + 1).unwrap();
            assert_eq!(a.coeff(n), &ExactRational::from(count.clone()), "n={n}");
            // the Prüfer enumeration is itself checked by an edge-subset scan
            if n < 6 {
                assert_eq!(
                    count,
                    BigInt::from(alternating_trees_by_edge_subsets(n + 1)),
                    "m={}",
                    n + 1
                );
            }
        }
    });
}

#[test]
fn criterion_04_inverse_closed_form() {
    criterion(4, "inverse closed form, k = 1..6", 10, || {
        for k in 1..=6u32 {
            let inverse = tree_series(k, 24).unwrap().comp_inverse().unwrap();
            let closed = inverse_closed_form(k, 24).unwrap();
            assert_eq!(inverse, closed, "k={k}");
            assert!(inverse.integrality_check().is_integral(), "k={k}");
            assert!(closed.integrality_check().is_integral(), "k={k}");
        }
    });
}

#[test]
fn criterion_05_factorial_sum() {
    criterion(5, "factorial-sum formula", 1, || {
        let inverse = tree_series(2, 20).unwrap().comp_inverse().unwrap();
        let expansion = inv_a2_oracle(20);
        for n in 1..=20 {
            let formula = inv_a2_coefficient(n).unwrap();
            assert_eq!(formula, factorial_sum_oracle(n), "n={n}");
            assert_eq!(inverse.coeff(n), &ExactRational::from(formula), "n={n}");
            assert_eq!(inverse.coeff(n), &expansion[n - 1], "n={n}");
        }
    });
}

#[test]
fn criterion_06_drake_closed_form() {
    criterion(6, "Drake closed form", 30, || {
        let f = factorials(16);
        let c = binomial_rows(16);
        let g = drake_inverse_series(8).unwrap();
        for n in 1..=8usize {
            let poly = g.coeff(n);
            let d = n as u32 - 1;
            assert!(poly.is_homogeneous_of_degree(d), "n={n}");
            let mut seen = 0;
            for e in DrakeExponent::all_of_degree(d) {
                let [a1, a2, d1, d2] = [e.a1, e.a2, e.d1, e.d2].map(|v| v as usize);
                let sign = if d.is_multiple_of(2) { 1 } else { -1 };
                let expected = BigInt::from(sign)
                    * &f[a1 + a2]
                    * &f[d1 + d2]
                    * &c[a1 + d1][a1]
                    * &c[a2 + d2][a2];
                assert_eq!(drake_closed_form(&e), expected, "{e:?}");
                assert_eq!(
                    poly.coeff(&e.monomial()),
                    ExactRational::from(expected),
                    "n={n} {e:?}"
                );
                seen += 1;
            }
            assert_eq!(poly.len(), seen, "n={n}: stray monomials");
        }
        let special = specialize_k2(&g);
        for n in 1..=8 {
            assert_eq!(
                special.coeff(n),
                &ExactRational::from(factorial_sum_oracle(n)),
                "n={n}"
            );
        }
    });
}

#[test]
fn criterion_07_drake_fixed_point() {
    criterion(7, "Drake fixed point", 30, || {
        let f = solve_drake_f(8).unwrap();
        for n in 0..=8 {
            for (_, c) in f.coeff(n).terms() {
                assert!(c.is_integer(), "F_{n} has coefficient {c}");
            }
        }
        assert!(verify_drake_functional_eq(&f).unwrap());
        let g = drake_inverse_series(8).unwrap();
        assert_eq!(g.compose(&f).unwrap(), EgfSeries::x(8));
    });
}

#[test]
fn criterion_08_beta_identity() {
    criterion(8, "beta identity", 5, || {
        assert!(beta_series_identity(10).unwrap());
        let diagonal = BivariateSeries::log_quotient(11).unwrap().diagonal_egf();
        assert!(diagonal.len() >= 12);
        for n in 1..=12 {
            assert_eq!(
                diagonal[n - 1],
                ExactRational::from(factorial_sum_oracle(n)),
                "n={n}"
            );
        }
    });
}

#[test]
fn criterion_09_reduction_theorem() {
    criterion(9, "reduction theorem", 60, || {
        for (h, k) in grid() {
            let factor = reduction_factor(h, k, 32).unwrap();
            assert!(factor.integrality_check().is_integral(), "h={h} k={k}");
            let base = m_series_gf(1, k.abs(), 32).unwrap();
            assert_eq!(
                factor.mul(&base).unwrap(),
                m_series_gf(h, k, 32).unwrap(),
                "h={h} k={k}"
            );
        }
    });
}

fn random_integral(rng: &mut StdRng, order: usize) -> Vec<i64> {
    (0..=order).map(|_| rng.gen_range(-9..=9)).collect()
}

#[test]
fn criterion_10_hurwitz_closure() {
    criterion(10, "Hurwitz closure, 200 instances each", 10, || {
        let mut rng = StdRng::seed_from_u64(20_261_018);
        let integral = |s: &Series| s.coeffs().iter().all(ExactRational::is_integer);
        for _ in 0..200 {
            let f = Series::from_i64s(&random_integral(&mut rng, 12));
            let g = Series::from_i64s(&random_integral(&mut rng, 12));
            assert!(integral(&f.mul(&g).unwrap()));
        }
        for _ in 0..200 {
            let f = Series::from_i64s(&random_integral(&mut rng, 12));
            let mut v = random_integral(&mut rng, 12);
            v[0] = 0;
            let g = Series::from_i64s(&v);
            assert!(integral(&f.compose(&g).unwrap()));
        }
        for _ in 0..200 {
            let mut v = random_integral(&mut rng, 12);
            v[0] = 0;
            v[1] = if rng.gen_bool(0.5) { 1 } else { -1 };
            let f = Series::from_i64s(&v);
            let inverse = f.comp_inverse().unwrap();
            assert!(integral(&inverse));
            assert_eq!(f.compose(&inverse).unwrap(), Series::x(12));
        }
    });
}

fn hurwitz(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn criterion_11_cli_contract() {
    criterion(11, "CLI contract", 180, || {
        let (code, out) = hurwitz(&["verify-all"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(
            out.lines().filter(|l| l.starts_with("PASS")).count(),
            10,
            "{out}"
        );

        let (code, _) = hurwitz(&[
            "compute", "--h", "1", "--k", "2", "--order", "12", "--route", "both",
        ]);
        assert_eq!(code, 0);
        let (code, _) = hurwitz(&[
            "compute",
            "--h",
            "1",
            "--k",
            "2",
            "--order",
            "12",
            "--route",
            "both",
            "--inject-fault",
            "7",
        ]);
        assert_eq!(code, 1);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b000001.txt");
        let (code, table) = hurwitz(&[
            "compute", "--h", "3", "--k", "-5", "--order", "20", "--format", "bfile",
        ]);
        assert_eq!(code, 0);
        std::fs::write(&path, format!("# M_n(3,-5)\n{table}")).unwrap();
        let file = path.to_str().unwrap();
        let (code, out) = hurwitz(&[
            "bfile-check",
            "--file",
            file,
            "--series",
            "am",
            "--h",
            "3",
            "--k",
            "-5",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("MATCH"), "{out}");
        let (code, _) = hurwitz(&[
            "bfile-check",
            "--file",
            file,
            "--series",
            "am",
            "--h",
            "3",
            "--k",
            "5",
        ]);
        assert_eq!(code, 1);
    });
}
