//! ζ(s) approximations built from dyadic cosecant sums and their binomial series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

use crate::error::{require_level, Error, Result};
use crate::exact::binom;
use crate::negative_power::neg5_numerator;
use crate::numeric::EvalContext;

/// ζ(3) to 30 significant digits (Apéry's constant, OEIS A002117).
pub const ZETA3: &str = "1.20205690315959428539973816151";
/// ζ(5) to 30 significant digits (OEIS A013663).
pub const ZETA5: &str = "1.03692775514336992633136548646";

/// Consecutive negligible terms required before a series is declared converged.
pub const STOP_RUN: usize = 50;

/// Above this level the csc sums are still cheap but the binomial series is not.
pub const MAX_ZETA_LEVEL: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethod {
    SineSum,
    BinomialSeries,
    WeightedCsc3,
    WeightedCsc5,
}

impl ZetaMethod {
    pub fn name(self) -> &'static str {
        match self {
            ZetaMethod::SineSum => "sine-sum",
            ZetaMethod::BinomialSeries => "binomial",
            ZetaMethod::WeightedCsc3 => "weighted3",
            ZetaMethod::WeightedCsc5 => "weighted5",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesStatus {
    /// A finite sum, no truncation involved.
    Exact,
    Converged,
    TermsExhausted,
}

impl SeriesStatus {
    pub fn name(self) -> &'static str {
        match self {
            SeriesStatus::Exact => "exact",
            SeriesStatus::Converged => "converged",
            SeriesStatus::TermsExhausted => "terms_exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaApproxResult {
    pub value: Float,
    pub level: u32,
    pub terms_used: usize,
    pub method: ZetaMethod,
    pub reference_error: Option<Float>,
    pub status: SeriesStatus,
    /// Asymptotic ratio of consecutive series terms, cos²(π/2^{n−1}).
    pub tail_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityGap {
    pub lhs: Float,
    pub rhs: Float,
    pub gap: Float,
    pub terms_used: usize,
    pub status: SeriesStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliCheck {
    pub series_value: Float,
    pub closed: BigRational,
    pub closed_value: Float,
    pub gap: Float,
    pub terms_used: usize,
    pub status: SeriesStatus,
}

fn check_s(s: &Float) -> Result<()> {
    if !(s.is_finite() && *s > 1) {
        return Err(Error::Domain(format!("zeta approximations need real s > 1, got {}", s.to_f64())));
    }
    Ok(())
}

/// Bernoulli numbers B_0..B_m from Σ_{k≤m} C(m+1, k) B_k = 0.
pub fn bernoulli_numbers(m: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for k in 1..=m {
        let mut acc = BigRational::zero();
        for (i, bi) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom(k as i64 + 1, i as i64)) * bi;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b
}

pub fn bernoulli(m: usize) -> BigRational {
    bernoulli_numbers(m).pop().unwrap_or_else(BigRational::one)
}

/// ζ(2j)/π^{2j} = (−1)^{j+1} 2^{2j} B_{2j} / (2·(2j)!).
pub fn reference_even_zeta(j: u32) -> Result<BigRational> {
    if j == 0 {
        return Err(Error::InvalidArgument("j must be at least 1".into()));
    }
    let two_j = 2 * j as usize;
    let fact: BigInt = (1..=two_j as u64).map(BigInt::from).product();
    let v = BigRational::new(BigInt::one() << two_j, fact * 2) * bernoulli(two_j);
    Ok(if j.is_multiple_of(2) { -v } else { v })
}

/// Stored or exactly derived ζ(s) when s is an even integer, 3 or 5.
pub fn reference_zeta(s: &Float, ctx: &EvalContext) -> Option<Float> {
    if !s.is_integer() {
        return None;
    }
    let k = s.to_i32_saturating()?;
    match k {
        3 => ctx.parse(ZETA3).ok(),
        5 => ctx.parse(ZETA5).ok(),
        k if k >= 2 && k % 2 == 0 => {
            let c = reference_even_zeta(k as u32 / 2).ok()?;
            Some(ctx.from_rational(&c) * ctx.powi(&ctx.pi(), k))
        }
        _ => None,
    }
}

fn with_reference(mut r: ZetaApproxResult, s: &Float, ctx: &EvalContext) -> ZetaApproxResult {
    r.reference_error = reference_zeta(s, ctx).map(|z| ctx.float(&r.value - z).abs());
    r
}

/// (2^s π^s/(2^s−1)) Σ_{i ≤ 2^{n−2}} (2^n sin((2i−1)π/2^n))^{−s}.
pub fn zeta_sine_sum(s: &Float, n: u32, ctx: &EvalContext) -> Result<ZetaApproxResult> {
    check_s(s)?;
    require_level(n, 3, MAX_ZETA_LEVEL)?;
    let neg_s = ctx.float(-s);
    let mut acc = ctx.zero();
    for i in 1..=1i64 << (n - 2) {
        let x = ctx.sin_pi_dyadic(2 * i - 1, n) << n;
        acc += ctx.powf(&x, &neg_s);
    }
    let two_s = ctx.powf(&ctx.float(2), s);
    let pref = ctx.powf(&ctx.pi(), s) * &two_s / (two_s - 1u32);
    let r = ZetaApproxResult {
        value: acc * pref,
        level: n,
        terms_used: 0,
        method: ZetaMethod::SineSum,
        reference_error: None,
        status: SeriesStatus::Exact,
        tail_ratio: None,
    };
    Ok(with_reference(r, s, ctx))
}

/// Running values of C(2p, p − k·2^{n−2})/4^p for every k that has entered.
///
/// B_p/4^p = a_0 + 2 Σ_{k≥1} (−1)^k a_k, where B_p is the integer cosine
/// power average at level n−1.
struct BracketWalker<'a> {
    ctx: &'a EvalContext,
    period: u64,
    p: u64,
    a: Vec<Float>,
}

impl<'a> BracketWalker<'a> {
    fn new(n: u32, ctx: &'a EvalContext) -> Self {
        BracketWalker { ctx, period: 1u64 << (n - 2), p: 0, a: vec![ctx.float(1)] }
    }

    fn value(&self) -> Float {
        let mut acc = self.a[0].clone();
        for (k, v) in self.a.iter().enumerate().skip(1) {
            if k % 2 == 1 {
                acc -= ctx_mul2(v);
            } else {
                acc += ctx_mul2(v);
            }
        }
        acc
    }

    fn advance(&mut self) {
        let p = self.p;
        for (k, v) in self.a.iter_mut().enumerate() {
            let kq = k as u64 * self.period;
            // a_k(p+1) = a_k(p)·(2p+2)(2p+1) / (4(p+1−kq)(p+1+kq))
            *v *= (2 * p + 2) * (2 * p + 1);
            *v /= 4 * (p + 1 - kq);
            *v /= p + 1 + kq;
        }
        self.p += 1;
        self.spawn();
    }

    /// Adds a_{K+1} once a_K is large enough to matter; smaller k-terms are
    /// below the working precision relative to a_0 and stay out of the sum.
    fn spawn(&mut self) {
        let prec = self.ctx.precision();
        loop {
            let k = self.a.len() as u64;
            let kq = k * self.period;
            if self.p < kq {
                return;
            }
            let last = self.a.last().expect("a_0 always present");
            let floor = Float::with_val(prec, &self.a[0] >> (prec + 32));
            if *last < floor {
                return;
            }
            // C(2p, m−1) = C(2p, m)·m/(2p−m+1), stepping m from p−(k−1)q down to p−kq.
            let mut v = last.clone();
            let top = self.p - (k - 1) * self.period;
            for m in (self.p - kq + 1..=top).rev() {
                v *= m;
                v /= 2 * self.p - m + 1;
            }
            self.a.push(v);
        }
    }
}

fn ctx_mul2(v: &Float) -> Float {
    Float::with_val(v.prec(), v * 2u32)
}

struct SeriesSum {
    value: Float,
    terms: usize,
    status: SeriesStatus,
}

/// Σ_p w(p)·(B_p/4^p) with the run-of-small-terms stopping rule.
fn bracket_series(
    n: u32,
    max_terms: usize,
    ctx: &EvalContext,
    mut weight: impl FnMut(u64) -> Float,
) -> Result<SeriesSum> {
    require_level(n, 3, MAX_ZETA_LEVEL)?;
    if max_terms == 0 {
        return Err(Error::InvalidArgument("max_terms must be at least 1".into()));
    }
    let quarter_tol = ctx.float(ctx.tolerance() >> 2u32);
    let mut walker = BracketWalker::new(n, ctx);
    let mut acc = ctx.zero();
    let mut run = 0;
    for p in 0..max_terms as u64 {
        let term = weight(p) * walker.value();
        acc += &term;
        let rel = if acc.is_zero() { ctx.float(term.abs_ref()) } else { ctx.float(&term / &acc).abs() };
        if rel < quarter_tol {
            run += 1;
            if run >= STOP_RUN {
                return Ok(SeriesSum { value: acc, terms: p as usize + 1, status: SeriesStatus::Converged });
            }
        } else {
            run = 0;
        }
        walker.advance();
    }
    Ok(SeriesSum { value: acc, terms: max_terms, status: SeriesStatus::TermsExhausted })
}

/// Σ_p 2·C(−s/2, 2p)·B_p/4^p.
fn binomial_core(s: &Float, n: u32, max_terms: usize, ctx: &EvalContext) -> Result<SeriesSum> {
    let a = ctx.float(-s) / 2u32;
    let mut coeff = ctx.float(2);
    bracket_series(n, max_terms, ctx, |p| {
        if p > 0 {
            // C(a, 2p) from C(a, 2p−2).
            let t = 2 * p;
            coeff *= ctx.float(&a - (t - 2)) * ctx.float(&a - (t - 1));
            coeff /= (t - 1) * t;
        }
        coeff.clone()
    })
}

fn tail_ratio(n: u32, ctx: &EvalContext) -> f64 {
    let c = ctx.cos_pi_dyadic(1, n - 1);
    Float::with_val(64, c.square_ref()).to_f64()
}

/// 2^{3s/2−ns+n−3} π^s/(2^s−1) Σ_p 2^{1−2p} C(−s/2, 2p) B_p.
pub fn zeta_binomial_series(s: &Float, n: u32, max_terms: usize, ctx: &EvalContext) -> Result<ZetaApproxResult> {
    check_s(s)?;
    let sum = binomial_core(s, n, max_terms, ctx)?;
    let nf = n as i32;
    let exponent = ctx.float(s * 3u32) / 2u32 - ctx.float(s * nf) + (nf - 3);
    let two_s = ctx.powf(&ctx.float(2), s);
    let pref = ctx.powf(&ctx.float(2), &exponent) * ctx.powf(&ctx.pi(), s) / (two_s - 1u32);
    let r = ZetaApproxResult {
        value: sum.value * pref,
        level: n,
        terms_used: sum.terms,
        method: ZetaMethod::BinomialSeries,
        reference_error: None,
        status: sum.status,
        tail_ratio: Some(tail_ratio(n, ctx)),
    };
    Ok(with_reference(r, s, ctx))
}

/// −j² + (2^{n−1}+1)j − 2^{n−2}.
pub fn zeta3_weight(j: i64, n: u32) -> BigInt {
    let j = BigInt::from(j);
    -(&j * &j) + ((BigInt::one() << (n - 1) as usize) + 1) * &j - (BigInt::one() << (n - 2) as usize)
}

/// j⁴ − 2(2^{n−1}+1)j³ + (3·2^{n−1}−1)j² + 2(2^{n−2}+2^{3n−4}+1)j − 2^{n−1}(2^{2n−3}+1).
pub fn zeta5_weight(j: i64, n: u32) -> BigInt {
    neg5_numerator(j, n)
}

fn weighted_csc(n: u32, ctx: &EvalContext, w: impl Fn(i64) -> BigInt) -> Float {
    let mut acc = ctx.zero();
    for j in 1..=1i64 << (n - 2) {
        acc += ctx.from_bigint(&w(j)) / ctx.sin_pi_dyadic(2 * j - 1, n);
    }
    acc
}

/// π³/(7·2^{3n−4}) Σ_j (−j² + (2^{n−1}+1)j − 2^{n−2}) csc((2j−1)π/2^n).
pub fn zeta3_weighted(n: u32, ctx: &EvalContext) -> Result<ZetaApproxResult> {
    require_level(n, 3, MAX_ZETA_LEVEL)?;
    let sum = weighted_csc(n, ctx, |j| zeta3_weight(j, n));
    let value = (ctx.powi(&ctx.pi(), 3) * sum / 7u32) >> (3 * n - 4);
    let r = ZetaApproxResult {
        value,
        level: n,
        terms_used: 0,
        method: ZetaMethod::WeightedCsc3,
        reference_error: None,
        status: SeriesStatus::Exact,
        tail_ratio: None,
    };
    Ok(with_reference(r, &ctx.float(3), ctx))
}

/// π⁵/(93·2^{5n−6}) Σ_j w₅(j) csc((2j−1)π/2^n).
pub fn zeta5_weighted(n: u32, ctx: &EvalContext) -> Result<ZetaApproxResult> {
    require_level(n, 3, MAX_ZETA_LEVEL)?;
    let sum = weighted_csc(n, ctx, |j| zeta5_weight(j, n));
    let value = (ctx.powi(&ctx.pi(), 5) * sum / 93u32) >> (5 * n - 6);
    let r = ZetaApproxResult {
        value,
        level: n,
        terms_used: 0,
        method: ZetaMethod::WeightedCsc5,
        reference_error: None,
        status: SeriesStatus::Exact,
        tail_ratio: None,
    };
    Ok(with_reference(r, &ctx.float(5), ctx))
}

/// The binomial series at fixed n against the weighted csc sum at the same n.
///
/// s = 3: 2^{n−5/2} Σ_p 2^{1−2p} (3/2)_{2p} B_p/(2p)! = Σ_j w₃(j) csc θ_j.
/// s = 5: 3·2^{n−3/2} Σ_p 2^{1−2p} (5/2)_{2p} B_p/(2p)! = Σ_j w₅(j) csc θ_j.
pub fn finite_level_identity(s_odd: u32, n: u32, max_terms: usize, ctx: &EvalContext) -> Result<IdentityGap> {
    let (pref_exp2, pref_mul, rhs) = match s_odd {
        3 => (ctx.float(n as i32) - 2.5, 1u32, weighted_csc(n, ctx, |j| zeta3_weight(j, n))),
        5 => (ctx.float(n as i32) - 1.5, 3u32, weighted_csc(n, ctx, |j| zeta5_weight(j, n))),
        _ => return Err(Error::InvalidArgument(format!("finite-level identity covers s = 3 or 5, got {s_odd}"))),
    };
    let sum = binomial_core(&ctx.float(s_odd), n, max_terms, ctx)?;
    let lhs = sum.value * ctx.powf(&ctx.float(2), &pref_exp2) * pref_mul;
    let gap = ctx.float(&lhs - &rhs).abs();
    Ok(IdentityGap { lhs, rhs, gap, terms_used: sum.terms, status: sum.status })
}

/// (−1)^{j+1} (2^{2j}−1)/2^{j−2} · (j−1)!/(2j)! · B_{2j}.
pub fn bernoulli_closed_value(j: u32) -> Result<BigRational> {
    if j == 0 {
        return Err(Error::InvalidArgument("j must be at least 1".into()));
    }
    let j64 = j as i64;
    let fact = |m: i64| -> BigInt { (1..=m).map(BigInt::from).product() };
    let pow = if j >= 2 {
        BigRational::new((BigInt::one() << (2 * j) as usize) - 1, BigInt::one() << (j - 2) as usize)
    } else {
        BigRational::from_integer(((BigInt::one() << 2usize) - 1) * 2)
    };
    let v = pow * BigRational::new(fact(j64 - 1), fact(2 * j64)) * bernoulli(2 * j as usize);
    Ok(if j.is_multiple_of(2) { -v } else { v })
}

/// Σ_p 2^{−(2p−1+n(2j−1))} (2p+j−1)! [1/(p!)² + 2Σ_k (−1)^k/((p−k2^{n−2})!(p+k2^{n−2})!)]
/// against the Bernoulli closed value.
pub fn bernoulli_limit_check(j: u32, n: u32, max_terms: usize, ctx: &EvalContext) -> Result<BernoulliCheck> {
    let closed = bernoulli_closed_value(j)?;
    let sum = bracket_series(n, max_terms, ctx, |p| {
        // 2·(2p+1)(2p+2)···(2p+j−1)
        let mut w = ctx.float(2);
        for t in 1..j as u64 {
            w *= 2 * p + t;
        }
        w
    })?;
    let series_value = sum.value >> (n * (2 * j - 1));
    let closed_value = ctx.from_rational(&closed);
    let gap = ctx.float(&series_value - &closed_value).abs();
    Ok(BernoulliCheck { series_value, closed, closed_value, gap, terms_used: sum.terms, status: sum.status })
}

/// max over p ≤ p_max of |Σ_i cos^{2p+1}((2i−1)π/2^{n−1})| with i up to 2^{n−2}.
pub fn odd_power_cancellation(p_max: u32, n: u32, ctx: &EvalContext) -> Result<Float> {
    require_level(n, 3, MAX_ZETA_LEVEL)?;
    let mut worst = ctx.zero();
    for p in 0..=p_max {
        let mut acc = ctx.zero();
        for i in 1..=1i64 << (n - 2) {
            acc += ctx.powi(&ctx.cos_pi_dyadic(2 * i - 1, n - 1), 2 * p as i32 + 1);
        }
        let a = acc.abs();
        if a > worst {
            worst = a;
        }
    }
    Ok(worst)
}
