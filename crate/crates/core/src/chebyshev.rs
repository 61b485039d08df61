//! Odd-order Chebyshev-like polynomials p_i with cos((2i−1)θ) = (−1)^i p_i(cos θ).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

use crate::error::{require_level, Error, Result};
use crate::exact::{binom, fold_odd_cos_index, pow_mod_pow2, Sign, MAX_LEVEL};
use crate::minpoly::closed_minpoly;
use crate::numeric::EvalContext;
use crate::poly::{IntPolynomial, RatPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddChebyshev {
    pub i: u64,
    pub poly: IntPolynomial,
}

impl OddChebyshev {
    /// (−1)^i p_i, the polynomial that actually maps cos θ to cos((2i−1)θ).
    pub fn signed(&self) -> IntPolynomial {
        if self.i % 2 == 1 {
            -&self.poly
        } else {
            self.poly.clone()
        }
    }
}

/// Coefficient of x^{2j−1}: (−1)^j 2^{2j−2} C(i+j−2, 2j−2)(2i−1)/(2j−1).
pub fn p_coefficient(i: u64, j: u64) -> Result<BigInt> {
    let (i, j) = (i as i64, j as i64);
    let num = (BigInt::one() << (2 * j - 2) as usize) * binom(i + j - 2, 2 * j - 2) * (2 * i - 1);
    let (q, r) = num.div_rem(&BigInt::from(2 * j - 1));
    if !r.is_zero() {
        return Err(Error::Internal(format!("coefficient ({i},{j}) of p_i is not an integer")));
    }
    Ok(if j % 2 == 1 { -q } else { q })
}

pub fn p_poly(i: u64) -> Result<OddChebyshev> {
    if i == 0 {
        return Err(Error::InvalidArgument("p_i needs i >= 1".into()));
    }
    let mut coeffs = vec![BigInt::zero(); 2 * i as usize];
    for j in 1..=i {
        coeffs[2 * j as usize - 1] = p_coefficient(i, j)?;
    }
    Ok(OddChebyshev { i, poly: IntPolynomial::new(coeffs) })
}

/// −p_i − 2(2x²−1)p_{i+1} − p_{i+2} = 0 for every i ≤ i_max.
pub fn verify_recursion(i_max: u64) -> Result<bool> {
    let t = IntPolynomial::from_i64s(&[-2, 0, 4]);
    let mut polys = Vec::new();
    for i in 1..=i_max + 2 {
        polys.push(p_poly(i)?.poly);
    }
    Ok((0..i_max as usize).all(|k| {
        let lhs = &(&(-&polys[k]) - &(&t * &polys[k + 1])) - &polys[k + 2];
        lhs.is_zero()
    }))
}

/// The radical closed form of p_i(x), evaluated with complex intermediates.
///
/// For |x| < 1 the radicand x²(x²−1) is negative, so both bases are unit
/// complex numbers z, z̄ and only z^i is needed.
pub fn closed_form_eval(i: u64, x: &Float, ctx: &EvalContext) -> Result<Float> {
    if Float::with_val(ctx.precision(), x.abs_ref()) >= 1 {
        return Err(Error::Domain("closed form needs |x| < 1".into()));
    }
    if x.is_zero() {
        return Ok(ctx.zero());
    }
    let x2 = ctx.float(x * x);
    let w = ctx.float(x.abs_ref()) * ctx.sqrt(&(ctx.float(1) - &x2));
    let re = ctx.float(1) - ctx.float(&x2 * 2u32);
    let im = ctx.float(&w * 2u32);
    let (a, b) = complex_pow(re, im, i, ctx);
    Ok((x2 * a - w * b) / x)
}

fn complex_pow(mut re: Float, mut im: Float, mut e: u64, ctx: &EvalContext) -> (Float, Float) {
    let (mut ar, mut ai) = (ctx.float(1), ctx.zero());
    while e > 0 {
        if e & 1 == 1 {
            let nr = ctx.float(&ar * &re) - ctx.float(&ai * &im);
            let ni = ctx.float(&ar * &im) + ctx.float(&ai * &re);
            ar = nr;
            ai = ni;
        }
        let nr = ctx.float(&re * &re) - ctx.float(&im * &im);
        let ni = ctx.float(&re * &im) * 2u32;
        re = nr;
        im = ni;
        e >>= 1;
    }
    (ar, ai)
}

/// Deviations |sin((2i−1)θ) + p_i(sin θ)| and |cos((2i−1)θ) − (−1)^i p_i(cos θ)|.
pub fn odd_multiple_identity_check(i: u64, theta: &Float, ctx: &EvalContext) -> Result<(Float, Float)> {
    let p = p_poly(i)?;
    let m = ctx.float(theta * (2 * i - 1));
    let s = ctx.float(theta.sin_ref());
    let c = ctx.float(theta.cos_ref());
    let err_sin = (ctx.float(m.sin_ref()) + p.poly.eval(&s, ctx)).abs();
    let err_cos = (ctx.float(m.cos_ref()) - p.signed().eval(&c, ctx)).abs();
    Ok((err_sin, err_cos))
}

pub fn composition_commutes(i: u64, j: u64) -> Result<bool> {
    let (a, b) = (p_poly(i)?.poly, p_poly(j)?.poly);
    Ok(a.compose(&b) == b.compose(&a))
}

/// (−1)^i p_i(cos((2j−1)π/2^n)) = sign·cos((2k−1)π/2^n); returns (k, sign).
pub fn signed_composition_angle(i: i64, j: i64, n: u32) -> Result<(i64, Sign)> {
    if i < 1 || j < 1 {
        return Err(Error::InvalidArgument(format!("indices must be positive, got ({i},{j})")));
    }
    fold_odd_cos_index(2 * (2 * i * j - i - j + 1) - 1, n)
}

/// k ≡ i(2i−1)^{2^{n−1}−1} (mod 2^{n+1}), so that (2k−1)(2i−1) ≡ 1.
pub fn inverse_index(i: i64, n: u32) -> Result<u64> {
    require_level(n, 2, MAX_LEVEL)?;
    if i < 1 || i > 1i64 << (n - 2) {
        return Err(Error::InvalidArgument(format!("i = {i} is outside [1, 2^{}]", n - 2)));
    }
    let bits = n + 1;
    let a = pow_mod_pow2(2 * i - 1, (1u64 << (n - 1)) - 1, bits);
    Ok(crate::exact::mul_mod_pow2(i, a, bits))
}

/// ((−1)^k p_k) ∘ ((−1)^i p_i) reduced modulo f_n is exactly x.
pub fn verify_inverse_mod_minpoly(i: i64, n: u32) -> Result<bool> {
    let k = inverse_index(i, n)?;
    let f = closed_minpoly(n)?.to_rational();
    let inner = p_poly(i as u64)?.signed().to_rational();
    let outer = p_poly(k)?.signed();
    Ok(RatPolynomial::compose_mod(&outer, &inner, &f)?.is_identity())
}

/// Σ_{j≤i} (−1)^j 2^{2j−1}(2i−1)/(2j−1)·C(i+j−2, 2j−2) against (−1)^i·2.
pub fn alternating_coefficient_sum(i: i64) -> (BigRational, BigRational) {
    let mut lhs = BigRational::zero();
    for j in 1..=i {
        let t = BigRational::new(
            (BigInt::one() << (2 * j - 1) as usize) * (2 * i - 1) * binom(i + j - 2, 2 * j - 2),
            BigInt::from(2 * j - 1),
        );
        if j % 2 == 1 {
            lhs -= t;
        } else {
            lhs += t;
        }
    }
    let rhs = BigRational::from_integer(BigInt::from(if i % 2 == 0 { 2 } else { -2 }));
    (lhs, rhs)
}

/// Σ_k (−1)^k 2^{2k}(2i−1)/(2k−1)·C(i+k−2, 2k−2)·C(k, j−1)
/// against (−1)^i 2^{2j−2}(2i²−2i+j−1)/((2j−3)(j−1))·C(i+j−3, i−j+1), for i ≥ j ≥ 2.
pub fn weighted_coefficient_sum(i: i64, j: i64) -> Result<(BigRational, BigRational)> {
    if j < 2 || i < j {
        return Err(Error::InvalidArgument(format!("need i >= j >= 2, got ({i},{j})")));
    }
    let mut lhs = BigRational::zero();
    for k in 1..=i {
        let t = BigRational::new(
            (BigInt::one() << (2 * k) as usize) * (2 * i - 1) * binom(i + k - 2, 2 * k - 2) * binom(k, j - 1),
            BigInt::from(2 * k - 1),
        );
        if k % 2 == 1 {
            lhs -= t;
        } else {
            lhs += t;
        }
    }
    let mut rhs = BigRational::new(
        (BigInt::one() << (2 * j - 2) as usize) * (2 * i * i - 2 * i + j - 1) * binom(i + j - 3, i - j + 1),
        BigInt::from((2 * j - 3) * (j - 1)),
    );
    if i % 2 == 1 {
        rhs = -rhs;
    }
    Ok((lhs, rhs))
}
