//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion fails when any of its clauses fails. Clauses that are known to
//! be unattainable as stated are listed in `KNOWN_FAILURES` with the reason;
//! the test asserts that the observed failures are exactly those, so an
//! unexpected failure and an unexpected pass both break the build.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rug::Float;
use serde_json::Value;

use dyadic_core::chebyshev::{composition_commutes, verify_inverse_mod_minpoly, verify_recursion};
use dyadic_core::even_power::{even_matrix, integer_power_average, integer_power_average_numeric, merca_lhs, merca_sum};
use dyadic_core::minpoly::{closed_minpoly, lemma_sum_identity, nested_minpoly};
use dyadic_core::negative_power::{negative_matrix, s_closed_form, s_direct};
use dyadic_core::odd_power::{
    commutes, conjugation_invariance, is_normal, matrix_gather, matrix_scatter, CyclicGroup, GroupElement,
};
use dyadic_core::zeta::{
    bernoulli_limit_check, finite_level_identity, zeta3_weighted, zeta5_weighted, zeta_sine_sum,
};
use dyadic_core::{BasisTag, EvalContext, ScaledMatrix};

const KNOWN_FAILURES: &[(u32, &str, &str)] = &[
    (
        7,
        "binomial sum identity for odd r",
        "the printed identity holds for even r only; for odd r the left side is exactly the negative of the right",
    ),
    (
        9,
        "sine-sum error strictly decreasing at s=2",
        "the level-n sum for s=2 equals pi^2/6 exactly, so the error is rounding noise at every n",
    ),
    (
        9,
        "bernoulli gap shrinks >4x per n+2 at j=1",
        "the j=1 series sums to the closed value 1/2 exactly at every level; the gap is truncation noise",
    ),
];

struct Clause {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Criterion {
    clauses: Vec<Clause>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.clauses.push(Clause { name: name.into(), pass, detail: detail.into() });
    }

    fn runtime(&mut self, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.check(format!("runtime < {}s", limit.as_secs()), t < limit, format!("{:.2}s", t.as_secs_f64()));
    }
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

fn ctx256() -> EvalContext {
    EvalContext::new(256).unwrap().with_tolerance_log2(128)
}

fn c1_minpoly() -> Criterion {
    let mut c = Criterion::default();
    let t = Instant::now();
    let f = closed_minpoly(5).unwrap();
    let even: Vec<BigInt> = f.coeffs().iter().step_by(2).cloned().collect();
    let odd_zero = f.coeffs().iter().skip(1).step_by(2).all(|v| *v == BigInt::from(0));
    let want: Vec<BigInt> = [1i64, -128, 2688, -21504, 84480, -180224, 212992, -131072, 32768]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    c.check("closed_minpoly(5) coefficients", even == want && odd_zero, format!("{even:?}"));
    let bad: Vec<u32> = (3..=10).filter(|&n| nested_minpoly(n).unwrap() != closed_minpoly(n).unwrap()).collect();
    c.check("nested = closed for n in [3,10]", bad.is_empty(), format!("mismatches {bad:?}"));
    c.runtime(t, Duration::from_secs(1));
    c
}

fn c2_odd_matrices() -> Criterion {
    let mut c = Criterion::default();
    let t = Instant::now();
    let m15 = matrix_scatter(15, 4).unwrap();
    let p15 = ints(&[&[6434, 4990, 2898, 910], &[-2898, 6434, -910, -4990], &[-4990, 910, 6434, 2898], &[
        -910, 2898, -4990, 6434,
    ]]);
    c.check("n=4 r=15 over 2^14", m15.rows() == p15.as_slice() && m15.log2_denom() == 14, "");
    let m7 = matrix_scatter(7, 4).unwrap();
    let p7 = ints(&[&[35, 21, 7, 1], &[-7, 35, -1, -21], &[-21, 1, 35, 7], &[-1, 7, -21, 35]]);
    c.check("n=4 r=7 over 2^6", m7.rows() == p7.as_slice() && m7.log2_denom() == 6, "");
    let mut bad = vec![];
    for n in 2..=7 {
        for r in (1..=21).step_by(2) {
            if matrix_scatter(r, n).unwrap() != matrix_gather(r, n).unwrap() {
                bad.push((r, n));
            }
        }
    }
    c.check("scatter = gather, odd r <= 21, n <= 7", bad.is_empty(), format!("mismatches {bad:?}"));
    c.runtime(t, Duration::from_secs(10));
    c
}

fn c3_residuals() -> Criterion {
    let mut c = Criterion::default();
    let ctx = ctx256();
    let t = Instant::now();
    let mut worst = ctx.zero();
    let mut bad = vec![];
    let mut count = 0;
    let mut record = |m: ScaledMatrix, r: i64, n: u32| {
        let res = m.power_residual(r as i32, &ctx);
        if !ctx.within_tolerance(&res) {
            bad.push((r, n));
        }
        if res > worst {
            worst = res;
        }
        count += 1;
    };
    for n in 2..=7 {
        for r in (1..=21).step_by(2) {
            record(matrix_scatter(r, n).unwrap(), r, n);
        }
    }
    for n in 3..=6 {
        for r in (2..=20).step_by(2) {
            record(even_matrix(r, n).unwrap(), r, n);
        }
    }
    for n in 3..=7 {
        for r in [-1, -3, -5] {
            record(negative_matrix(r, n).unwrap(), r, n);
        }
    }
    c.check(
        format!("{count} matrices below 2^-128 at 256 bits"),
        bad.is_empty(),
        format!("worst 2^{:.1}, failures {bad:?}", dyadic_core::numeric::log2_abs(&worst)),
    );
    c.runtime(t, Duration::from_secs(60));
    c
}

fn c4_even() -> Criterion {
    let mut c = Criterion::default();
    let ctx = ctx256();
    let m4 = even_matrix(16, 4).unwrap();
    let p4 = ints(&[&[6434, 11424, 7888, 3808], &[6434, -3808, -7888, 11424], &[6434, 3808, -7888, -11424], &[
        6434, -11424, 7888, -3808,
    ]]);
    c.check("n=4 r=16 over 2^15", m4.rows() == p4.as_slice() && m4.log2_denom() == 15, "");
    let printed: &[&[i64]] = &[
        &[6435, 11440, 8008, 4368, 1820, 560, 120, 16],
        &[6435, -560, -120, 11440, -1820, -16, 8008, -4368],
        &[6435, -4368, 120, 16, -1820, 11440, -8008, 560],
        &[6435, -16, -8008, 560, 1820, -4368, -120, 11440],
        &[6435, 16, -8008, -560, 1820, 4368, -120, -11440],
        &[6435, 4368, 120, -16, -1820, -114400, -8008, -560],
        &[6435, 560, -120, -11440, -1820, 16, 8008, 4368],
        &[6435, -11440, 8008, -4368, 1820, -560, 120, -16],
    ];
    let printed = ints(printed);
    let mut corrected = printed.clone();
    corrected[5][5] = BigInt::from(-11440);
    let m5 = even_matrix(16, 5).unwrap();
    let diffs: Vec<(usize, usize)> = (0..8)
        .flat_map(|i| (0..8).map(move |j| (i, j)))
        .filter(|&(i, j)| m5.rows()[i][j] != printed[i][j])
        .collect();
    c.check("n=5 r=16 differs from print only at row 6, col 6", diffs == [(5, 5)], format!("{diffs:?}"));
    c.check("n=5 r=16 equals corrected print", m5.rows() == corrected.as_slice() && m5.log2_denom() == 15, "");
    let basis = BasisTag::EvenCos(5);
    let as_printed = ScaledMatrix::new(printed, 15, basis).unwrap();
    let as_corrected = ScaledMatrix::new(corrected, 15, basis).unwrap();
    let target = ctx.powi(&basis.row_angle_value(6, &ctx), 16);
    let err_printed = ctx.float(&target - as_printed.row_value(6, &ctx)).abs();
    let err_corrected = ctx.float(&target - as_corrected.row_value(6, &ctx)).abs();
    c.check(
        "oracle rejects 114400 and accepts 11440",
        !ctx.within_tolerance(&err_printed) && ctx.within_tolerance(&err_corrected),
        format!("row 6 error {:.3e} as printed", err_printed.to_f64()),
    );
    c
}

fn c5_negative() -> Criterion {
    let mut c = Criterion::default();
    let cos1 = ints(&[&[1, -1, 1, -1], &[-1, 1, 1, 1], &[1, -1, 1, 1], &[1, 1, 1, 1]]);
    let sin1 = ints(&[&[1, 1, 1, 1], &[1, 1, -1, 1], &[1, 1, 1, -1], &[-1, 1, -1, 1]]);
    let cos3 = ints(&[&[2, -5, 7, -8], &[-7, 2, 8, 5], &[5, -8, 2, 7], &[8, 7, 5, 2]]);
    let sin3 = ints(&[&[2, 5, 7, 8], &[7, 2, -8, 5], &[5, 8, 2, -7], &[-8, 7, -5, 2]]);
    let in_basis = |m: ScaledMatrix, sin: bool| -> ScaledMatrix {
        let is_sin = matches!(m.basis(), BasisTag::OddSin(_));
        if is_sin == sin {
            m
        } else {
            m.reversed().unwrap()
        }
    };
    for (r, scale, cos_p, sin_p) in [(-1i64, -1i64, &cos1, &sin1), (-3, -3, &cos3, &sin3)] {
        let m = negative_matrix(r, 4).unwrap();
        let mc = in_basis(m.clone(), false);
        let ms = in_basis(m, true);
        c.check(format!("n=4 r={r} cosine form"), mc.rows() == cos_p.as_slice() && mc.log2_denom() == scale, "");
        c.check(format!("n=4 r={r} sine form"), ms.rows() == sin_p.as_slice() && ms.log2_denom() == scale, "");
        let printed_cos = ScaledMatrix::new(cos_p.clone(), scale, BasisTag::OddCos(4)).unwrap();
        let rev = printed_cos.reversed().unwrap();
        c.check(format!("reversal maps printed r={r} cosine form to sine form"), rev.rows() == sin_p.as_slice(), "");
    }
    c
}

fn c6_group() -> Criterion {
    let mut c = Criterion::default();
    let t = Instant::now();
    let bad: Vec<u32> = (3..=8).filter(|&n| !CyclicGroup::new(n).unwrap().verify_axioms().all()).collect();
    c.check("group axioms and cyclicity, n in [3,8]", bad.is_empty(), format!("failing {bad:?}"));
    for n in [4u32, 5] {
        let ms: Vec<ScaledMatrix> = (1..=15).step_by(2).map(|r| matrix_scatter(r, n).unwrap()).collect();
        let normal = ms.iter().all(is_normal);
        let pairwise = ms.iter().all(|a| ms.iter().all(|b| commutes(a, b).unwrap()));
        c.check(format!("8 odd powers normal at n={n}"), normal, "");
        c.check(format!("8 odd powers commute pairwise at n={n}"), pairwise, "");
        let conj = ms
            .iter()
            .all(|m| (1..=1i64 << (n - 2)).all(|a| conjugation_invariance(m, GroupElement(a)).unwrap()));
        c.check(format!("conjugation invariance at n={n}"), conj, "");
    }
    c.runtime(t, Duration::from_secs(30));
    c
}

fn c7_identities() -> Criterion {
    let mut c = Criterion::default();
    let t = Instant::now();
    let mut even_bad = vec![];
    let mut odd_bad = vec![];
    let mut odd_negated = true;
    for r in 1..=64i64 {
        for k in 1..=r {
            let (l, rh) = lemma_sum_identity(r, k).unwrap();
            if l != rh {
                if r % 2 == 0 {
                    even_bad.push((r, k));
                } else {
                    odd_bad.push((r, k));
                }
            }
            if r % 2 == 1 && l != -rh {
                odd_negated = false;
            }
        }
    }
    c.check("binomial sum identity for even r", even_bad.is_empty(), format!("failing {even_bad:?}"));
    c.check(
        "binomial sum identity for odd r",
        odd_bad.is_empty(),
        format!("{} of 1024 odd-r pairs fail; lhs = -rhs for all of them: {odd_negated}", odd_bad.len()),
    );
    c.check("Chebyshev recursion, i <= 16", verify_recursion(16).unwrap(), "");
    let comm = (1..=8u64).all(|i| (1..=8u64).all(|j| composition_commutes(i, j).unwrap()));
    c.check("composition commutes, i, j <= 8", comm, "");
    let mut inv_bad = vec![];
    for n in 2..=6u32 {
        for i in 1..=1i64 << (n - 2) {
            if !verify_inverse_mod_minpoly(i, n).unwrap() {
                inv_bad.push((i, n));
            }
        }
    }
    c.check("inverse index reduces to x mod f_n, n <= 6", inv_bad.is_empty(), format!("failing {inv_bad:?}"));
    c.runtime(t, Duration::from_secs(60));
    c
}

fn c8_sums() -> Criterion {
    let mut c = Criterion::default();
    let ctx = EvalContext::new(256).unwrap().with_tolerance_log2(100);
    let mut bad = vec![];
    for s in 2..=8 {
        for n in 3..=8 {
            let closed = s_closed_form(s, n).unwrap().eval(n, &ctx);
            let direct = s_direct(s, n, &ctx).unwrap();
            if !ctx.within_tolerance(&(closed - direct)) {
                bad.push((s, n));
            }
        }
    }
    c.check("S(s,n) closed = direct to 2^-100, s in [2,8], n in [3,8]", bad.is_empty(), format!("failing {bad:?}"));
    let pairs: [(i64, i64); 20] = [
        (2, 1), (3, 1), (3, 2), (4, 3), (5, 2), (5, 4), (6, 5), (7, 3), (8, 7), (9, 4),
        (3, 3), (3, 7), (4, 4), (4, 9), (5, 5), (5, 12), (6, 13), (7, 15), (8, 20), (12, 30),
    ];
    let tight = ctx256();
    let merca_bad: Vec<(i64, i64)> = pairs
        .iter()
        .copied()
        .filter(|&(n, p)| {
            let rhs = tight.from_rational(&merca_sum(n, p).unwrap());
            !tight.within_tolerance(&(rhs - merca_lhs(n, p, &tight)))
        })
        .collect();
    c.check("Merca sum, 20 (N,p) pairs incl. p >= N", merca_bad.is_empty(), format!("failing {merca_bad:?}"));
    let mut avg_bad = vec![];
    for n in 2..=6u32 {
        for p in 0..=40i64 {
            let exact = integer_power_average(p, n).unwrap();
            let numeric = integer_power_average_numeric(p, n, &tight);
            let rounded = numeric.to_integer().unwrap();
            let close = ctx.float(&numeric - &rounded).abs() < 0.25;
            if !close || rounded.to_string() != exact.to_string() {
                avg_bad.push((p, n));
            }
        }
    }
    c.check("integer power average exact, p <= 40, n <= 6", avg_bad.is_empty(), format!("failing {avg_bad:?}"));
    c
}

fn c9_zeta() -> Criterion {
    let mut c = Criterion::default();
    let ctx = ctx256();
    let t = Instant::now();
    for s in [2u32, 3, 4, 5] {
        let errs: Vec<Float> =
            (5..=12).map(|n| zeta_sine_sum(&ctx.float(s), n, &ctx).unwrap().reference_error.unwrap()).collect();
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        let shown: Vec<String> = errs.iter().map(|e| format!("{:.2e}", e.to_f64())).collect();
        c.check(format!("sine-sum error strictly decreasing at s={s}"), decreasing, shown.join(" "));
        if s == 3 {
            let e = errs.last().unwrap().to_f64();
            c.check("sine-sum error < 1e-4 at n=12, s=3", e < 1e-4, format!("{e:.3e}"));
        }
    }
    let e3 = zeta3_weighted(12, &ctx).unwrap().reference_error.unwrap().to_f64();
    let e5 = zeta5_weighted(12, &ctx).unwrap().reference_error.unwrap().to_f64();
    c.check("weighted csc^3 within 1e-4 of zeta(3) at n=12", e3 < 1e-4, format!("{e3:.3e}"));
    c.check("weighted csc^5 within 1e-4 of zeta(5) at n=12", e5 < 1e-4, format!("{e5:.3e}"));
    let bound = ctx.float(1) >> 40u32;
    for s in [3u32, 5] {
        for n in 4..=6 {
            let g = finite_level_identity(s, n, 200_000, &ctx).unwrap();
            c.check(
                format!("finite-level identity s={s} n={n}"),
                g.gap < bound,
                format!("gap {:.2e} after {} terms", g.gap.to_f64(), g.terms_used),
            );
        }
    }
    for j in [1u32, 2] {
        let gaps: Vec<f64> =
            [4u32, 6, 8].iter().map(|&n| bernoulli_limit_check(j, n, 400_000, &ctx).unwrap().gap.to_f64()).collect();
        let shrinks = gaps.windows(2).all(|w| w[0] > 4.0 * w[1]);
        let shown: Vec<String> = gaps.iter().map(|g| format!("{g:.2e}")).collect();
        c.check(format!("bernoulli gap shrinks >4x per n+2 at j={j}"), shrinks, format!("n=4,6,8: {}", shown.join(" ")));
    }
    c.runtime(t, Duration::from_secs(300));
    c
}

fn dyadic(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dyadic")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn is_int_string(v: &Value) -> bool {
    v.as_str().is_some_and(|s| s.parse::<BigInt>().is_ok())
}

fn matrix_schema(v: &Value) -> bool {
    let rows = v["entries"].as_array();
    v["n"].is_u64()
        && v["r"].is_i64()
        && v["basis"].is_string()
        && v["log2_denom"].is_i64()
        && v["scale"].is_string()
        && rows.is_some_and(|rows| {
            rows.iter().all(|row| {
                row.as_array().is_some_and(|cells| cells.len() == rows.len() && cells.iter().all(is_int_string))
            })
        })
}

type Schema = fn(&Value) -> bool;
/// name, success args, schema, fault args, bad-argument args
type CliCase = (&'static str, &'static [&'static str], Schema, &'static [&'static str], &'static [&'static str]);

fn c10_cli() -> Criterion {
    let mut c = Criterion::default();
    let cases: [CliCase; 6] = [
        (
            "minpoly",
            &["minpoly", "--n", "5", "--form", "closed", "--format", "json"],
            |v| v.as_array().is_some_and(|a| a.len() == 17 && a.iter().all(is_int_string)),
            &["minpoly", "--n", "4", "--form", "both", "--inject-fault"],
            &["minpoly", "--n", "2", "--form", "nested"],
        ),
        (
            "matrix",
            &["matrix", "--n", "4", "--r", "15", "--format", "json"],
            matrix_schema,
            &["matrix", "--n", "4", "--r", "15", "--inject-fault"],
            &["matrix", "--n", "4", "--r", "-7"],
        ),
        (
            "verify",
            &["verify", "--n", "5", "--r", "7", "--precision", "256", "--format", "json"],
            |v| v["pass"] == Value::Bool(true) && v["log2_residual"].as_f64().is_some_and(|x| x < -128.0),
            &["verify", "--n", "5", "--r", "7", "--inject-fault"],
            &["verify", "--n", "4", "--r", "0"],
        ),
        (
            "zeta",
            &["zeta", "--s", "3", "--n", "10", "--method", "weighted3", "--format", "json"],
            |v| {
                v["value"].as_str().and_then(|s| s.parse::<f64>().ok()).is_some_and(|x| (x - 1.2020569).abs() < 1e-4)
                    && v["terms_used"].is_u64()
                    && v["status"].is_string()
                    && v["reference_error"].is_string()
            },
            &["zeta", "--s", "3", "--n", "10", "--method", "weighted3", "--inject-fault"],
            &["zeta", "--s", "0.5", "--n", "5"],
        ),
        (
            "sums",
            &["sums", "--s", "2", "--n", "3", "--format", "json"],
            |v| v["closed"]["scalar"] == "8" && v["pass"] == Value::Bool(true) && v["gap"].is_string(),
            &["sums", "--s", "2", "--n", "3", "--inject-fault"],
            &["sums", "--s", "9", "--n", "3"],
        ),
        (
            "group",
            &["group", "--n", "5", "--format", "json"],
            |v| {
                v["cyclic"] == Value::Bool(true)
                    && v["table"].as_array().is_some_and(|t| {
                        t.len() == 8 && t.iter().all(|r| r.as_array().is_some_and(|r| r.len() == 8))
                    })
            },
            &["group", "--n", "5", "--inject-fault"],
            &["group", "--n", "11"],
        ),
    ];
    for (name, ok_args, schema, fault_args, bad_args) in cases {
        let (code, out) = dyadic(ok_args);
        let valid = serde_json::from_str::<Value>(&out).ok().is_some_and(|v| schema(&v));
        c.check(format!("{name}: success exit 0 with valid schema"), code == 0 && valid, format!("exit {code}"));
        let (code, _) = dyadic(fault_args);
        c.check(format!("{name}: injected fault exits 1"), code == 1, format!("exit {code}"));
        let (code, _) = dyadic(bad_args);
        c.check(format!("{name}: bad argument exits 2"), code == 2, format!("exit {code}"));
    }
    c
}

/// Writes past libtest's output capture so the report shows up in plain `cargo test` runs.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stderr().lock(), $($arg)*);
    }};
}

#[test]
fn acceptance() {
    type Entry = (u32, &'static str, fn() -> Criterion);
    let suite: [Entry; 10] = [
        (1, "minimal polynomial", c1_minpoly),
        (2, "odd matrices", c2_odd_matrices),
        (3, "numeric residuals", c3_residuals),
        (4, "even matrices", c4_even),
        (5, "negative powers", c5_negative),
        (6, "group and structure", c6_group),
        (7, "identities", c7_identities),
        (8, "sums", c8_sums),
        (9, "zeta", c9_zeta),
        (10, "CLI end-to-end", c10_cli),
    ];
    let mut surprises = vec![];
    for (id, title, run) in suite {
        let crit = run();
        let failed: Vec<&Clause> = crit.clauses.iter().filter(|c| !c.pass).collect();
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        say!("criterion {id:>2} {verdict} {title} ({} clauses)", crit.clauses.len());
        for cl in &crit.clauses {
            let known = KNOWN_FAILURES.iter().find(|(k, n, _)| *k == id && *n == cl.name);
            if !cl.pass {
                say!("    failed: {} [{}]", cl.name, cl.detail);
                match known {
                    Some((_, _, why)) => say!("      documented: {why}"),
                    None => surprises.push(format!("criterion {id}: unexpected failure '{}'", cl.name)),
                }
            } else if known.is_some() {
                surprises.push(format!("criterion {id}: documented failure '{}' now passes", cl.name));
            }
        }
    }
    assert!(surprises.is_empty(), "{}", surprises.join("\n"));
}
