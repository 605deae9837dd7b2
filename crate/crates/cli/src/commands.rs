use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hurwitz::am::{am_certify_with_fault, m_direct_row, m_series_gf, Step};
use hurwitz::combinat::count_alternating_trees;
use hurwitz::drake::{
    closed_form_series, drake_inverse_series, inv_a2_coefficient, specialize_k2, MAX_DRAKE_ORDER,
};
use hurwitz::fixpoint::tree_series;
use hurwitz::{Error, ExactRational};

use crate::bfile::{compare_bfile, format_bfile, read_bfile, Alignment};
use crate::checks;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest order `bfile-check` will compute a series to.
const BFILE_MAX_ORDER: i64 = 400;

#[derive(Debug, Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "Exact Almkvist–Meurman numbers and Hurwitz-series certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Csv,
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Gf,
    Direct,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Specialization {
    K2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// M_n(h, k) for the given --h and --k
    Am,
    /// 2x/(e^x + 1)
    Genocchi,
    /// 1 + A for the tree series with the given --k
    Trees,
    /// 2 log(1+x)/(2+x)
    InvA2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print M_n(h, k) for n = 0..=order
    Compute {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        #[arg(long, value_enum, default_value = "gf")]
        route: Route,
        /// Add 1 to coefficient N of the series route (testing aid)
        #[arg(long, value_name = "N")]
        inject_fault: Option<usize>,
    },
    /// Run the integrality certificate for (h, k)
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        order: usize,
        /// Corrupt one step's output, e.g. `step=comp-inverse` (testing aid)
        #[arg(long, value_name = "step=NAME")]
        inject_fault: Option<String>,
    },
    /// Print the tree series a_1..=a_order solving (1+A)^k = e^{x p_k(A)}
    Trees {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        order: usize,
        /// Also count alternating trees by brute force (k = 2, order <= 8)
        #[arg(long)]
        oracle: bool,
    },
    /// Print the coefficient polynomials of the four-parameter inverse series
    Drake {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        check_closed_form: bool,
        #[arg(long, value_enum)]
        specialize: Option<Specialization>,
    },
    /// Run the full verification suite
    VerifyAll {
        /// Halve every order
        #[arg(long)]
        quick: bool,
    },
    /// Compare a computed series against a local OEIS b-file
    BfileCheck {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum)]
        series: SeriesKind,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        h: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
        k: i64,
        /// Entry i is compared with coefficient stride * i + offset-shift
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        offset_shift: i64,
        #[arg(long, default_value_t = 1)]
        stride: i64,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            stderr: format!("error: {}\n", message.into()),
            code: EXIT_USAGE,
            ..Self::default()
        }
    }

    fn mismatch(stdout: String, message: impl Into<String>) -> Self {
        Self {
            stdout,
            stderr: format!("{}\n", message.into()),
            code: EXIT_MISMATCH,
        }
    }
}

/// Parse `args` (program name first) and run the selected subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(err) => {
            let text = err.render().to_string();
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            if err.use_stderr() {
                Outcome {
                    stderr: text,
                    code,
                    ..Outcome::default()
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Compute {
            h,
            k,
            order,
            format,
            route,
            inject_fault,
        } => compute(h, k, order, format, route, inject_fault),
        Command::Certify {
            h,
            k,
            order,
            inject_fault,
        } => certify(h, k, order, inject_fault.as_deref()),
        Command::Trees { k, order, oracle } => trees(k, order, oracle),
        Command::Drake {
            order,
            check_closed_form,
            specialize,
        } => drake(order, check_closed_form, specialize),
        Command::VerifyAll { quick } => verify_all(quick),
        Command::BfileCheck {
            file,
            series,
            h,
            k,
            offset_shift,
            stride,
        } => bfile_check(
            &file,
            series,
            h,
            k,
            Alignment {
                shift: offset_shift,
                stride,
            },
        ),
    }
}

fn internal(err: Error) -> Outcome {
    Outcome::mismatch(String::new(), format!("error: {err}"))
}

fn compute(
    h: i64,
    k: i64,
    order: usize,
    format: Format,
    route: Route,
    fault: Option<usize>,
) -> Outcome {
    if k == 0 {
        return Outcome::usage("--k must be nonzero");
    }
    if let Some(n) = fault.filter(|&n| n > order) {
        return Outcome::usage(format!("--inject-fault {n} is beyond --order {order}"));
    }
    let gf = match m_series_gf(h, k, order) {
        Ok(s) => {
            let mut values = s.into_coeffs();
            if let Some(n) = fault {
                values[n] = &values[n] + &ExactRational::one();
            }
            values
        }
        Err(e) => return internal(e),
    };
    let direct = match route {
        Route::Gf => None,
        Route::Direct | Route::Both => match m_direct_row(h, k, order) {
            Ok(v) => Some(v),
            Err(e) => return internal(e),
        },
    };

    let sep = match format {
        Format::Tsv => "\t",
        Format::Csv => ",",
        Format::Bfile => " ",
    };
    let mut out = String::new();
    match (route, &direct) {
        (Route::Gf, _) if format == Format::Bfile => out = format_bfile(&gf, 0),
        (Route::Direct, Some(d)) if format == Format::Bfile => out = format_bfile(d, 0),
        (Route::Both, Some(d)) => {
            for (n, (a, b)) in gf.iter().zip(d).enumerate() {
                let _ = writeln!(out, "{n}{sep}{a}{sep}{b}");
            }
        }
        (Route::Direct, Some(d)) => {
            for (n, v) in d.iter().enumerate() {
                let _ = writeln!(out, "{n}{sep}{v}");
            }
        }
        _ => {
            for (n, v) in gf.iter().enumerate() {
                let _ = writeln!(out, "{n}{sep}{v}");
            }
        }
    }
    if let Some(d) = &direct {
        if route == Route::Both {
            if let Some(n) = gf.iter().zip(d).position(|(a, b)| a != b) {
                return Outcome::mismatch(
                    out,
                    format!(
                        "route mismatch at n={n}: series {} vs direct {}",
                        gf[n], d[n]
                    ),
                );
            }
        }
    }
    Outcome::ok(out)
}

fn certify(h: i64, k: i64, order: usize, fault: Option<&str>) -> Outcome {
    if k == 0 {
        return Outcome::usage("--k must be nonzero");
    }
    if order == 0 {
        return Outcome::usage("--order must be at least 1");
    }
    let fault = match fault {
        None => None,
        Some(spec) => match spec.strip_prefix("step=").map(str::parse::<Step>) {
            Some(Ok(step)) => Some(step),
            _ => {
                let names: Vec<_> = Step::ALL.iter().map(|s| s.name()).collect();
                return Outcome::usage(format!(
                    "--inject-fault expects step=<{}>",
                    names.join("|")
                ));
            }
        },
    };
    match am_certify_with_fault(h, k, order, fault) {
        Ok(cert) if cert.is_valid() => Outcome::ok(cert.to_string()),
        Ok(cert) => Outcome::mismatch(cert.to_string(), "certificate refuted"),
        Err(e) => internal(e),
    }
}

fn trees(k: u32, order: usize, oracle: bool) -> Outcome {
    if k == 0 {
        return Outcome::usage("--k must be positive");
    }
    if oracle && k != 2 {
        return Outcome::usage("--oracle is only available for --k 2");
    }
    if oracle && order > 8 {
        return Outcome::usage("--oracle supports --order up to 8");
    }
    let a = match tree_series(k, order) {
        Ok(a) => a,
        Err(e) => return internal(e),
    };
    let mut out = String::new();
    let mut first_bad = None;
    for n in 1..=order {
        let value = a.coeff(n);
        if oracle {
            let count = match count_alternating_trees(n + 1) {
                Ok(c) => c,
                Err(e) => return internal(e),
            };
            if first_bad.is_none() && value != &ExactRational::from(count.clone()) {
                first_bad = Some(n);
            }
            let _ = writeln!(out, "{n}\t{value}\t{count}");
        } else {
            let _ = writeln!(out, "{n}\t{value}");
        }
    }
    match first_bad {
        Some(n) => Outcome::mismatch(out, format!("series and enumeration disagree at n={n}")),
        None => Outcome::ok(out),
    }
}

fn drake(order: usize, check: bool, specialize: Option<Specialization>) -> Outcome {
    if order > MAX_DRAKE_ORDER {
        return Outcome::usage(format!(
            "--order {order} exceeds the four-variable cap of {MAX_DRAKE_ORDER}"
        ));
    }
    let g = match drake_inverse_series(order) {
        Ok(g) => g,
        Err(e) => return internal(e),
    };
    let mut out = String::new();
    match specialize {
        Some(Specialization::K2) => {
            let s = specialize_k2(&g);
            for n in 1..=order {
                let _ = writeln!(out, "n={n}: {}", s.coeff(n));
            }
        }
        None => {
            for n in 1..=order {
                let _ = writeln!(out, "n={n}: {}", g.coeff(n));
            }
        }
    }
    if check {
        let closed = closed_form_series(order);
        if let Some(n) = g.first_difference(&closed) {
            return Outcome::mismatch(out, format!("closed form disagrees at n={n}"));
        }
        out.push_str("closed form: OK\n");
    }
    Outcome::ok(out)
}

fn verify_all(quick: bool) -> Outcome {
    let outcomes = checks::run_all(quick);
    let mut out = String::new();
    for o in &outcomes {
        let _ = writeln!(out, "{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    if failed == 0 {
        let _ = writeln!(out, "ALL {} CHECKS PASSED", outcomes.len());
        Outcome::ok(out)
    } else {
        let _ = writeln!(out, "{failed} OF {} CHECKS FAILED", outcomes.len());
        Outcome::mismatch(out, "verification failed")
    }
}

fn bfile_check(
    path: &std::path::Path,
    kind: SeriesKind,
    h: i64,
    k: i64,
    align: Alignment,
) -> Outcome {
    if align.stride < 1 {
        return Outcome::usage("--stride must be positive");
    }
    let entries = match read_bfile(path) {
        Ok(e) => e,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let Some(max_index) = entries
        .iter()
        .map(|e| align.coefficient_index(e.index))
        .max()
    else {
        return Outcome::usage("b-file has no entries");
    };
    if max_index > BFILE_MAX_ORDER {
        return Outcome::usage(format!(
            "b-file reaches coefficient {max_index}; the limit is {BFILE_MAX_ORDER}"
        ));
    }
    let order = max_index.max(0) as usize;
    let series = match kind {
        SeriesKind::Am if k == 0 => return Outcome::usage("--k must be nonzero"),
        SeriesKind::Am => m_series_gf(h, k, order).map(|s| s.into_coeffs()),
        SeriesKind::Genocchi => m_series_gf(1, 2, order).map(|s| s.into_coeffs()),
        SeriesKind::Trees if k < 1 => return Outcome::usage("--k must be positive for trees"),
        SeriesKind::Trees => tree_series(k as u32, order)
            .map(|a| a.add_constant(&ExactRational::one()).into_coeffs()),
        SeriesKind::InvA2 => {
            let mut v = vec![ExactRational::zero()];
            for n in 1..=order {
                match inv_a2_coefficient(n) {
                    Ok(c) => v.push(ExactRational::from(c)),
                    Err(e) => return internal(e),
                }
            }
            Ok(v)
        }
    };
    let series = match series {
        Ok(s) => s,
        Err(e) => return internal(e),
    };
    let cmp = compare_bfile(&series, &entries, align);
    if cmp.is_match() {
        Outcome::ok(format!("{cmp}\n"))
    } else {
        Outcome::mismatch(format!("{cmp}\n"), "b-file comparison failed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("hurwitz").chain(args.iter().copied()))
    }

    fn column(out: &str, col: usize) -> Vec<String> {
        out.lines()
            .map(|l| l.split('\t').nth(col).unwrap().to_string())
            .collect()
    }

    #[test]
    fn compute_genocchi() {
        let o = run_args(&["compute", "--h", "1", "--k", "2", "--order", "8"]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(
            column(&o.stdout, 1),
            ["0", "1", "-1", "0", "1", "0", "-3", "0", "17"]
        );
        assert_eq!(
            column(&o.stdout, 0),
            ["0", "1", "2", "3", "4", "5", "6", "7", "8"]
        );
    }

    #[test]
    fn compute_zero_h_and_zero_k() {
        let o = run_args(&["compute", "--h", "0", "--k", "5", "--order", "4"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(column(&o.stdout, 1).iter().all(|v| v == "0"));
        assert_eq!(
            run_args(&["compute", "--h", "1", "--k", "0", "--order", "4"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["compute", "--h", "x", "--k", "2", "--order", "4"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["compute", "--k", "2", "--order", "4"]).code,
            EXIT_USAGE
        );
    }

    #[test]
    fn compute_negative_arguments_and_formats() {
        let o = run_args(&[
            "compute", "--h", "7", "--k", "-3", "--order", "5", "--route", "both",
        ]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        for line in o.stdout.lines() {
            let cols: Vec<_> = line.split('\t').collect();
            assert_eq!(cols[1], cols[2]);
        }
        let o = run_args(&[
            "compute", "--h", "1", "--k", "2", "--order", "3", "--format", "csv",
        ]);
        assert_eq!(o.stdout, "0,0\n1,1\n2,-1\n3,0\n");
        let o = run_args(&[
            "compute", "--h", "1", "--k", "2", "--order", "3", "--format", "bfile",
        ]);
        assert_eq!(o.stdout, "0 0\n1 1\n2 -1\n3 0\n");
    }

    #[test]
    fn compute_detects_injected_fault() {
        let o = run_args(&[
            "compute",
            "--h",
            "1",
            "--k",
            "2",
            "--order",
            "8",
            "--route",
            "both",
            "--inject-fault",
            "5",
        ]);
        assert_eq!(o.code, EXIT_MISMATCH);
        assert!(o.stderr.contains("n=5"));
        let o = run_args(&[
            "compute",
            "--h",
            "1",
            "--k",
            "2",
            "--order",
            "8",
            "--inject-fault",
            "9",
        ]);
        assert_eq!(o.code, EXIT_USAGE);
    }

    #[test]
    fn certify_examples() {
        let o = run_args(&["certify", "--h", "1", "--k", "2", "--order", "12"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.ends_with("CERTIFIED\n"));
        let o = run_args(&["certify", "--h", "7", "--k", "-3", "--order", "12"]);
        assert_eq!(o.code, EXIT_OK);
        let o = run_args(&[
            "certify",
            "--h",
            "1",
            "--k",
            "2",
            "--order",
            "12",
            "--inject-fault",
            "step=comp-inverse",
        ]);
        assert_eq!(o.code, EXIT_MISMATCH);
        assert!(o.stdout.contains("comp-inverse: FAIL at n=2"));
        assert!(o.stdout.ends_with("REFUTED\n"));
        let o = run_args(&[
            "certify",
            "--h",
            "1",
            "--k",
            "2",
            "--order",
            "12",
            "--inject-fault",
            "comp-inverse",
        ]);
        assert_eq!(o.code, EXIT_USAGE);
    }

    #[test]
    fn trees_examples() {
        let o = run_args(&["trees", "--k", "2", "--order", "5"]);
        assert_eq!(column(&o.stdout, 1), ["1", "2", "7", "36", "246"]);
        let o = run_args(&["trees", "--k", "1", "--order", "4"]);
        assert_eq!(column(&o.stdout, 1), ["1", "1", "1", "1"]);
        let o = run_args(&["trees", "--k", "2", "--order", "5", "--oracle"]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(column(&o.stdout, 1), column(&o.stdout, 2));
        assert_eq!(
            run_args(&["trees", "--k", "3", "--order", "5", "--oracle"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["trees", "--k", "2", "--order", "9", "--oracle"]).code,
            EXIT_USAGE
        );
    }

    #[test]
    fn drake_examples() {
        let o = run_args(&["drake", "--order", "2"]);
        assert_eq!(o.stdout, "n=1: 1\nn=2: -a1 - a2 - b1 - b2\n");
        let o = run_args(&["drake", "--order", "6", "--check-closed-form"]);
        assert_eq!(o.code, EXIT_OK);
        let o = run_args(&["drake", "--order", "5", "--specialize", "k2"]);
        assert_eq!(o.stdout, "n=1: 1\nn=2: -2\nn=3: 5\nn=4: -16\nn=5: 64\n");
        let o = run_args(&["drake", "--order", "9"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("cap"));
    }

    #[test]
    fn output_is_deterministic() {
        for args in [
            &[
                "compute", "--h", "-5", "--k", "4", "--order", "20", "--route", "both",
            ][..],
            &["certify", "--h", "3", "--k", "5", "--order", "10"],
            &["drake", "--order", "4"],
        ] {
            assert_eq!(run_args(args), run_args(args));
        }
    }

    #[test]
    fn help_exits_zero() {
        let o = run_args(&["--help"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("verify-all"));
    }
}
