//! Multiple-angle expansions, their real-exponent generalizations, and related sums.

use rug::Float;

use crate::error::{Error, Result};
use crate::exact::binom_real;
use crate::numeric::EvalContext;

/// Term budget for a series, with optional early exit once a term drops below tolerance/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesOptions {
    pub terms: usize,
    pub auto_stop: bool,
}

impl SeriesOptions {
    pub fn fixed(terms: usize) -> Self {
        SeriesOptions { terms, auto_stop: false }
    }

    pub fn auto(max_terms: usize) -> Self {
        SeriesOptions { terms: max_terms, auto_stop: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue {
    pub value: Float,
    pub terms_used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SinCos {
    pub sin: SeriesValue,
    pub cos: SeriesValue,
}

/// sin(Nθ), cos(Nθ) by the finite binomial expansions in cos θ and sin θ.
pub fn multiple_angle(big_n: u32, theta: &Float, ctx: &EvalContext) -> Result<(Float, Float)> {
    if big_n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let c = ctx.float(theta.cos_ref());
    let s = ctx.float(theta.sin_ref());
    let n = big_n as i64;
    let (mut sin_acc, mut cos_acc) = (ctx.zero(), ctx.zero());
    for r in 0..=n / 2 {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        if 2 * r < n {
            let b = ctx.from_bigint(&crate::exact::binom(n, 2 * r + 1));
            sin_acc += b * ctx.powi(&c, (n - 2 * r - 1) as i32) * ctx.powi(&s, (2 * r + 1) as i32) * sign;
        }
        let b = ctx.from_bigint(&crate::exact::binom(n, 2 * r));
        cos_acc += b * ctx.powi(&c, (n - 2 * r) as i32) * ctx.powi(&s, (2 * r) as i32) * sign;
    }
    Ok((sin_acc, cos_acc))
}

fn is_integer(r: &Float) -> bool {
    r.is_integer()
}

/// cos^r θ, for any real r when cos θ > 0 and integer r otherwise.
fn cos_power(r: &Float, c: &Float, ctx: &EvalContext) -> Result<Float> {
    if is_integer(r) {
        let e = r.to_i32_saturating().ok_or_else(|| Error::InvalidArgument("exponent out of range".into()))?;
        Ok(ctx.powi(c, e))
    } else if c.is_sign_positive() && !c.is_zero() {
        Ok(ctx.powf(c, r))
    } else {
        Err(Error::Domain("a non-integer power needs cos(theta) > 0".into()))
    }
}

/// Σ (−1)^j C(r, 2j+δ) t^{2j+δ} for δ ∈ {0, 1}.
fn tan_series(r: &Float, t: &Float, odd: bool, opts: SeriesOptions, ctx: &EvalContext) -> SeriesValue {
    let quarter_tol = ctx.float(ctx.tolerance() >> 2u32);
    let delta = odd as u32;
    let t2 = ctx.float(t * t);
    let mut power = if odd { ctx.float(t) } else { ctx.float(1) };
    let mut acc = ctx.zero();
    let mut used = 0;
    for j in 0..opts.terms as u32 {
        let mut term = binom_real(r, 2 * j + delta, ctx) * &power;
        if j % 2 == 1 {
            term = -term;
        }
        used += 1;
        let small = opts.auto_stop && ctx.float(term.abs_ref()) < quarter_tol;
        acc += term;
        if small {
            break;
        }
        power *= &t2;
    }
    SeriesValue { value: acc, terms_used: used }
}

fn require_cos_dominant(theta: &Float, ctx: &EvalContext) -> Result<(Float, Float)> {
    let c = ctx.float(theta.cos_ref());
    let s = ctx.float(theta.sin_ref());
    if ctx.float(c.abs_ref()) <= ctx.float(s.abs_ref()) {
        return Err(Error::Domain("the expansion needs |cos(theta)| > |sin(theta)|".into()));
    }
    Ok((c, s))
}

/// Partial sums of the generalized expansions of sin(rθ) and cos(rθ).
pub fn generalized_multiple_angle(r: &Float, theta: &Float, opts: SeriesOptions, ctx: &EvalContext) -> Result<SinCos> {
    if opts.terms == 0 {
        return Err(Error::InvalidArgument("at least one term is required".into()));
    }
    let (c, s) = require_cos_dominant(theta, ctx)?;
    let scale = cos_power(r, &c, ctx)?;
    let t = ctx.float(&s / &c);
    let mut sin = tan_series(r, &t, true, opts, ctx);
    let mut cos = tan_series(r, &t, false, opts, ctx);
    sin.value *= &scale;
    cos.value *= &scale;
    Ok(SinCos { sin, cos })
}

/// 1/cos^r θ as a series over whichever of sin(rθ), cos(rθ) is larger in magnitude.
pub fn sec_power_series(r: &Float, theta: &Float, opts: SeriesOptions, ctx: &EvalContext) -> Result<SeriesValue> {
    let (c, s) = require_cos_dominant(theta, ctx)?;
    let t = ctx.float(&s / &c);
    let rt = ctx.float(r * theta);
    let (sr, cr) = (ctx.float(rt.sin_ref()), ctx.float(rt.cos_ref()));
    let use_sin = ctx.float(sr.abs_ref()) >= ctx.float(cr.abs_ref());
    let divisor = if use_sin { sr } else { cr };
    if ctx.within_tolerance(&divisor) {
        return Err(Error::Domain("the divisor sin(r*theta) or cos(r*theta) vanishes".into()));
    }
    let mut out = tan_series(r, &t, use_sin, opts, ctx);
    out.value /= divisor;
    Ok(out)
}

/// 1/sin^r θ for |sin θ| > |cos θ|, the secant series at π/2 − θ.
pub fn csc_power_series(r: &Float, theta: &Float, opts: SeriesOptions, ctx: &EvalContext) -> Result<SeriesValue> {
    let (c, s) = (ctx.float(theta.cos_ref()), ctx.float(theta.sin_ref()));
    if ctx.float(s.abs_ref()) <= ctx.float(c.abs_ref()) {
        return Err(Error::Domain("the expansion needs |sin(theta)| > |cos(theta)|".into()));
    }
    let phi = (ctx.pi() >> 1u32) - theta;
    sec_power_series(r, &phi, opts, ctx)
}

/// 1/sin^r θ = 2^{r/2} Σ_j (−1)^j C(−r/2, j) cos^j(2θ) for 0 < θ < π/2.
pub fn csc_power_cos2_series(r: &Float, theta: &Float, opts: SeriesOptions, ctx: &EvalContext) -> Result<SeriesValue> {
    if *theta <= 0 || *theta >= (ctx.pi() >> 1u32) {
        return Err(Error::Domain("theta must lie in (0, pi/2)".into()));
    }
    if opts.terms == 0 {
        return Err(Error::InvalidArgument("at least one term is required".into()));
    }
    let x = ctx.float(theta * 2u32).cos();
    let a = ctx.float(-r) / 2u32;
    let quarter_tol = ctx.float(ctx.tolerance() >> 2u32);
    let mut power = ctx.float(1);
    let mut coeff = ctx.float(1);
    let mut acc = ctx.zero();
    let mut used = 0;
    for j in 0..opts.terms as u32 {
        // (−1)^j C(a, j) updated in place: factor −(a − j + 1)/j.
        if j > 0 {
            coeff *= ctx.float(&a - (j - 1));
            coeff /= j;
            coeff = -coeff;
            power *= &x;
        }
        let term = ctx.float(&coeff * &power);
        used += 1;
        let small = opts.auto_stop && ctx.float(term.abs_ref()) < quarter_tol;
        acc += term;
        if small || x.is_zero() {
            break;
        }
    }
    let scale = ctx.powf(&ctx.float(2), &(ctx.float(r) / 2u32));
    Ok(SeriesValue { value: acc * scale, terms_used: used })
}

/// Σ_{i<N} sin(a + i·d) in closed form, or summed directly when sin(d/2) vanishes.
pub fn sine_progression_sum(a: &Float, d: &Float, big_n: u32, ctx: &EvalContext) -> Result<Float> {
    if big_n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let half_d = ctx.float(d / 2u32);
    let denom = ctx.float(half_d.sin_ref());
    if ctx.within_tolerance(&denom) {
        return Ok(sine_progression_direct(a, d, big_n, ctx));
    }
    let num1 = ctx.float(&half_d * big_n).sin();
    let num2 = (ctx.float(&half_d * (big_n - 1)) + a).sin();
    Ok(num1 * num2 / denom)
}

pub fn sine_progression_direct(a: &Float, d: &Float, big_n: u32, ctx: &EvalContext) -> Float {
    let mut acc = ctx.zero();
    for i in 0..big_n {
        acc += (ctx.float(d * i) + a).sin();
    }
    acc
}

/// x − x³/6 < sin x < x − 2x³/(3π²) on (0, π/2).
pub fn jordan_bounds_check(x: &Float, ctx: &EvalContext) -> Result<bool> {
    if *x <= 0 || *x >= (ctx.pi() >> 1u32) {
        return Err(Error::Domain("x must lie in (0, pi/2)".into()));
    }
    let x3 = ctx.powi(x, 3);
    let lower = ctx.float(x) - ctx.float(&x3 / 6u32);
    let pi2 = ctx.float(ctx.pi().square_ref());
    let upper = ctx.float(x) - ctx.float(&x3 * 2u32) / (pi2 * 3u32);
    let s = ctx.float(x.sin_ref());
    Ok(lower < s && s < upper)
}
