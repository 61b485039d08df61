mod emit;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rug::Float;
use serde_json::{json, Value};

use dyadic_core::even_power::even_matrix;
use dyadic_core::minpoly::{closed_minpoly, nested_minpoly};
use dyadic_core::negative_power::{negative_matrix, s_closed_form, s_direct, PowerSumClosedForm};
use dyadic_core::numeric::log2_abs;
use dyadic_core::odd_power::{matrix_scatter, CyclicGroup};
use dyadic_core::zeta::{
    zeta3_weighted, zeta5_weighted, zeta_binomial_series, zeta_sine_sum, SeriesStatus, ZetaApproxResult,
};
use dyadic_core::{BasisTag, Error, EvalContext, IntPolynomial, ScaledMatrix};

use emit::{float_str, Emission, Format};

/// Largest level accepted by matrix, verify and sums.
const CLI_MAX_LEVEL: u32 = 12;
const GROUP_MAX_LEVEL: u32 = 10;

#[derive(Parser, Debug)]
#[command(name = "dyadic", version, about = "Exact trigonometric transforms over dyadic angles")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write data to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,

    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,

    /// Tolerance 2^-BITS; defaults to min(128, precision/2).
    #[arg(long, global = true, value_name = "BITS")]
    tolerance_bits: Option<u32>,

    /// Corrupt the computed object before its self-check (negative control).
    #[arg(long, global = true, hide = true)]
    inject_fault: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal polynomial of cos(π/2^n).
    Minpoly(MinpolyArgs),
    /// Exact power-of-cosine change-of-basis matrix.
    Matrix(MatrixArgs),
    /// Numeric residual of a constructed matrix.
    Verify(VerifyArgs),
    /// ζ(s) approximation at level n.
    Zeta(ZetaArgs),
    /// S(s,n) closed form against the direct csc^s sum.
    Sums(SumsArgs),
    /// Cayley table of the index group and its axioms.
    Group(GroupArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Nested,
    Closed,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Cos,
    Sin,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    SineSum,
    Binomial,
    Weighted3,
    Weighted5,
}

#[derive(Args, Debug)]
struct MinpolyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Form::Closed)]
    form: Form,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
    #[arg(long, value_enum, default_value_t = BasisArg::Cos)]
    basis: BasisArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
    #[arg(long, value_enum, default_value_t = BasisArg::Cos)]
    basis: BasisArg,
}

#[derive(Args, Debug)]
struct ZetaArgs {
    #[arg(long, allow_negative_numbers = true)]
    s: String,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::SineSum)]
    method: MethodArg,
    #[arg(long, default_value_t = 200_000)]
    max_terms: usize,
    /// Fail when the error against the reference value exceeds this.
    #[arg(long, default_value_t = 1.0)]
    max_error: f64,
}

#[derive(Args, Debug)]
struct SumsArgs {
    #[arg(long)]
    s: i64,
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long)]
    n: u32,
}

/// Failure classes mapped onto exit codes 2 and 1.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn context(cli: &Cli) -> Result<EvalContext, Failure> {
    let ctx = EvalContext::new(cli.precision)?;
    let bits = cli.tolerance_bits.unwrap_or_else(|| (cli.precision / 2).min(128));
    if bits == 0 || bits >= cli.precision {
        return Err(Failure::Usage(format!("tolerance bits must be in 1..{}", cli.precision)));
    }
    Ok(ctx.with_tolerance_log2(bits))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let ctx = context(cli)?;
    let emission = match &cli.command {
        Command::Minpoly(a) => cmd_minpoly(a, cli.inject_fault, &ctx)?,
        Command::Matrix(a) => cmd_matrix(a, cli.inject_fault, &ctx)?,
        Command::Verify(a) => cmd_verify(a, cli.inject_fault, &ctx)?,
        Command::Zeta(a) => cmd_zeta(a, cli.inject_fault, &ctx)?,
        Command::Sums(a) => cmd_sums(a, cli.inject_fault, &ctx)?,
        Command::Group(a) => cmd_group(a, cli.inject_fault)?,
    };
    let text = emission.render(cli.format);
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| Failure::Runtime(format!("cannot write output: {e}")))?;
    if !emission.ok {
        eprintln!("verification failed");
    }
    Ok(emission.ok)
}

fn bump(v: &mut BigInt) {
    *v += 1;
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

/// Largest |f(cos((2i−1)π/2^n))| over the root set.
fn root_residual(f: &IntPolynomial, n: u32, ctx: &EvalContext) -> Float {
    let mut worst = ctx.zero();
    for i in 1..=1i64 << (n - 2) {
        let v = f.eval(&ctx.cos_pi_dyadic(2 * i - 1, n), ctx).abs();
        if v > worst || v.is_nan() {
            worst = v;
        }
    }
    worst
}

fn cmd_minpoly(a: &MinpolyArgs, fault: bool, ctx: &EvalContext) -> Result<Emission, Failure> {
    let corrupt = |p: IntPolynomial| -> IntPolynomial {
        if !fault {
            return p;
        }
        let mut c = p.coeffs().to_vec();
        bump(&mut c[0]);
        IntPolynomial::new(c)
    };
    match a.form {
        Form::Both => {
            let nested = corrupt(nested_minpoly(a.n)?);
            let closed = closed_minpoly(a.n)?;
            let equal = nested == closed;
            let json = json!({
                "n": a.n,
                "nested": strings(nested.coeffs()),
                "closed": strings(closed.coeffs()),
                "equal": equal,
            });
            let text = format!("nested: {nested}\nclosed: {closed}\nequal: {equal}\n");
            let csv = format!("nested,{}\nclosed,{}\n", strings(nested.coeffs()).join(","), strings(closed.coeffs()).join(","));
            let tex = format!("f_{{{}}}(x) = {}\n", a.n, emit::tex_poly(&closed));
            Ok(Emission { json, text, csv, tex, ok: equal })
        }
        form => {
            let f = match form {
                Form::Nested => nested_minpoly(a.n)?,
                _ => closed_minpoly(a.n)?,
            };
            let f = corrupt(f);
            let residual = root_residual(&f, a.n, ctx);
            let ok = ctx.within_tolerance(&residual);
            let coeffs = strings(f.coeffs());
            let text = format!(
                "n: {}\ncoefficients: [{}]\npolynomial: {f}\nroot residual: 2^{:.1}\n",
                a.n,
                coeffs.join(", "),
                log2_abs(&residual)
            );
            Ok(Emission {
                json: json!(coeffs),
                csv: format!("{}\n", coeffs.join(",")),
                tex: format!("f_{{{}}}(x) = {}\n", a.n, emit::tex_poly(&f)),
                text,
                ok,
            })
        }
    }
}

fn build_matrix(n: u32, r: i64, basis: BasisArg) -> Result<ScaledMatrix, Failure> {
    if !(3..=CLI_MAX_LEVEL).contains(&n) {
        return Err(Failure::Usage(format!("n must be in 3..={CLI_MAX_LEVEL}, got {n}")));
    }
    let m = if r >= 1 && r % 2 == 1 {
        matrix_scatter(r, n)?
    } else if r >= 2 {
        if basis == BasisArg::Sin {
            return Err(Failure::Usage("even powers have no sine-basis presentation".into()));
        }
        even_matrix(r, n)?
    } else if matches!(r, -1 | -3 | -5) {
        negative_matrix(r, n)?
    } else {
        return Err(Failure::Usage(format!("unsupported power r = {r}; use odd r >= 1, even r >= 2, or r in {{-1, -3, -5}}")));
    };
    let want_sin = basis == BasisArg::Sin;
    let is_sin = matches!(m.basis(), BasisTag::OddSin(_));
    Ok(if want_sin != is_sin { m.reversed()? } else { m })
}

fn corrupt_matrix(m: &mut ScaledMatrix) {
    bump(m.entry_mut(1, 1));
}

fn cmd_matrix(a: &MatrixArgs, fault: bool, ctx: &EvalContext) -> Result<Emission, Failure> {
    let mut m = build_matrix(a.n, a.r, a.basis)?;
    if fault {
        corrupt_matrix(&mut m);
    }
    let residual = m.power_residual(a.r as i32, ctx);
    let ok = ctx.within_tolerance(&residual);
    Ok(emit::matrix_emission(&m, a.n, a.r, ok))
}

fn cmd_verify(a: &VerifyArgs, fault: bool, ctx: &EvalContext) -> Result<Emission, Failure> {
    let mut m = build_matrix(a.n, a.r, a.basis)?;
    if fault {
        corrupt_matrix(&mut m);
    }
    let residual = m.power_residual(a.r as i32, ctx);
    let ok = ctx.within_tolerance(&residual);
    let tol_log2 = log2_abs(ctx.tolerance());
    let json = json!({
        "n": a.n,
        "r": a.r,
        "basis": m.basis().name(),
        "precision": ctx.precision(),
        "residual": float_str(&residual, 12),
        "log2_residual": emit::finite_or_null(log2_abs(&residual)),
        "log2_tolerance": tol_log2,
        "pass": ok,
    });
    let text = format!(
        "n: {}\nr: {}\nbasis: {}\nprecision: {}\nresidual: {}\nlog2 residual: {:.2}\ntolerance: 2^{}\npass: {ok}\n",
        a.n,
        a.r,
        m.basis().name(),
        ctx.precision(),
        float_str(&residual, 12),
        log2_abs(&residual),
        tol_log2
    );
    let csv = emit::kv_csv(&json);
    let tex = format!("\\max_i |r_i| = {} \\quad ({})\n", float_str(&residual, 6), if ok { "pass" } else { "fail" });
    Ok(Emission { json, text, csv, tex, ok })
}

fn zeta_json(r: &ZetaApproxResult, s: &str, ctx: &EvalContext) -> Value {
    let digits = emit::digits(ctx);
    json!({
        "s": s,
        "n": r.level,
        "method": r.method.name(),
        "value": float_str(&r.value, digits),
        "reference_error": r.reference_error.as_ref().map(|e| float_str(e, 12)),
        "terms_used": r.terms_used,
        "status": r.status.name(),
        "tail_ratio": r.tail_ratio,
    })
}

fn cmd_zeta(a: &ZetaArgs, fault: bool, ctx: &EvalContext) -> Result<Emission, Failure> {
    let s = ctx.parse(&a.s)?;
    if !(s.is_finite() && s > 1) {
        return Err(Failure::Usage(format!("s must be a real number > 1, got {}", a.s)));
    }
    if !(a.max_error.is_finite() && a.max_error > 0.0) {
        return Err(Failure::Usage("max-error must be positive".into()));
    }
    let is_int = |k: i32| s == k;
    let mut r = match a.method {
        MethodArg::SineSum => zeta_sine_sum(&s, a.n, ctx)?,
        MethodArg::Binomial => zeta_binomial_series(&s, a.n, a.max_terms, ctx)?,
        MethodArg::Weighted3 if is_int(3) => zeta3_weighted(a.n, ctx)?,
        MethodArg::Weighted5 if is_int(5) => zeta5_weighted(a.n, ctx)?,
        MethodArg::Weighted3 | MethodArg::Weighted5 => {
            return Err(Failure::Usage("weighted3 needs --s 3 and weighted5 needs --s 5".into()))
        }
    };
    if fault {
        r.value += 4u32;
        if let Some(e) = r.reference_error.as_mut() {
            *e += 4u32;
        }
    }
    let exhausted = r.status == SeriesStatus::TermsExhausted;
    let too_far = r.reference_error.as_ref().is_some_and(|e| e.to_f64() > a.max_error);
    if exhausted {
        eprintln!("terms exhausted after {} terms", r.terms_used);
    }
    let ok = !exhausted && !too_far;
    let json = zeta_json(&r, &a.s, ctx);
    let text = emit::kv_text(&json);
    let csv = emit::kv_csv(&json);
    let tex = format!("\\zeta({}) \\approx {}\n", a.s, float_str(&r.value, 20));
    Ok(Emission { json, text, csv, tex, ok })
}

fn cmd_sums(a: &SumsArgs, fault: bool, ctx: &EvalContext) -> Result<Emission, Failure> {
    if !(2..=8).contains(&a.s) {
        return Err(Failure::Usage(format!("s must be in 2..=8, got {}", a.s)));
    }
    if !(3..=CLI_MAX_LEVEL).contains(&a.n) {
        return Err(Failure::Usage(format!("n must be in 3..={CLI_MAX_LEVEL}, got {}", a.n)));
    }
    let closed = s_closed_form(a.s, a.n)?;
    let mut closed_value = closed.eval(a.n, ctx);
    if fault {
        closed_value *= ctx.float(1) + (ctx.float(1) >> 20u32);
    }
    let numeric = s_direct(a.s, a.n, ctx)?;
    let gap = ctx.float(&closed_value - &numeric).abs();
    let ok = ctx.within_tolerance(&gap);
    let digits = emit::digits(ctx);
    let exact = match &closed {
        PowerSumClosedForm::Scalar(v) => json!({ "scalar": v.to_string() }),
        PowerSumClosedForm::CscWeights(w) => {
            json!({ "csc_weights": w.iter().map(ToString::to_string).collect::<Vec<_>>() })
        }
    };
    let json = json!({
        "s": a.s,
        "n": a.n,
        "closed": exact,
        "closed_value": float_str(&closed_value, digits),
        "numeric": float_str(&numeric, digits),
        "gap": float_str(&gap, 12),
        "pass": ok,
    });
    let closed_text = match &closed {
        PowerSumClosedForm::Scalar(v) => v.to_string(),
        PowerSumClosedForm::CscWeights(w) => {
            format!("weights [{}]", w.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
        }
    };
    let text = format!(
        "s: {}\nn: {}\nclosed: {closed_text}\nclosed value: {}\nnumeric: {}\ngap: {}\npass: {ok}\n",
        a.s,
        a.n,
        float_str(&closed_value, digits),
        float_str(&numeric, digits),
        float_str(&gap, 6)
    );
    let csv = format!(
        "s,n,closed_value,numeric,gap,pass\n{},{},{},{},{},{ok}\n",
        a.s,
        a.n,
        float_str(&closed_value, digits),
        float_str(&numeric, digits),
        float_str(&gap, 12)
    );
    let tex = format!("S({},{}) = {}\n", a.s, a.n, float_str(&closed_value, 20));
    Ok(Emission { json, text, csv, tex, ok })
}

fn cmd_group(a: &GroupArgs, fault: bool) -> Result<Emission, Failure> {
    if !(3..=GROUP_MAX_LEVEL).contains(&a.n) {
        return Err(Failure::Usage(format!("n must be in 3..={GROUP_MAX_LEVEL}, got {}", a.n)));
    }
    let mut g = CyclicGroup::new(a.n)?;
    if fault {
        let v = g.op(1, 1);
        g.set_entry(1, 1, if v == 1 { 2 } else { 1 });
    }
    let ax = g.verify_axioms();
    let ok = ax.all();
    let json = json!({
        "n": a.n,
        "order": g.order(),
        "table": g.table(),
        "generator": g.generator(),
        "closure": ax.closure,
        "associative": ax.associative,
        "commutative": ax.commutative,
        "identity": ax.identity,
        "inverses": ax.inverses,
        "cyclic": ax.cyclic,
    });
    let rows: Vec<String> = g
        .table()
        .iter()
        .map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join("\t"))
        .collect();
    let generator = g.generator().map_or_else(|| "none".to_string(), |x| x.to_string());
    let text = format!(
        "{}\norder: {}\ngenerator: {generator}\nclosure: {}\nassociative: {}\ncommutative: {}\nidentity: {}\ninverses: {}\ncyclic: {}\n",
        rows.join("\n"),
        g.order(),
        ax.closure,
        ax.associative,
        ax.commutative,
        ax.identity,
        ax.inverses,
        ax.cyclic
    );
    let csv: String = g
        .table()
        .iter()
        .map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join(",") + "\n")
        .collect();
    let tex = emit::tex_table(g.table());
    Ok(Emission { json, text, csv, tex, ok })
}
