//! Minimal polynomial f_n of cos((2i−1)π/2^n), nested and closed forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

use crate::error::{require_level, Error, Result};
use crate::exact::binom;
use crate::numeric::EvalContext;
use crate::poly::IntPolynomial;

/// Degree 2^{n−1} gets unwieldy well before this.
pub const MAX_MINPOLY_LEVEL: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPolyPair {
    pub n: u32,
    pub nested: IntPolynomial,
    pub closed: IntPolynomial,
}

impl MinPolyPair {
    pub fn build(n: u32) -> Result<Self> {
        Ok(MinPolyPair { n, nested: nested_minpoly(n)?, closed: closed_minpoly(n)? })
    }

    pub fn agree(&self) -> bool {
        self.nested == self.closed
    }
}

/// ((···((2x)²−2)²···)²−2)/2 with n−2 square-and-subtract steps after the first.
///
/// For n = 2 this expression is 2x²−1, the negative of the closed form, so
/// the nested form starts at n = 3.
pub fn nested_minpoly(n: u32) -> Result<IntPolynomial> {
    require_level(n, 3, MAX_MINPOLY_LEVEL)?;
    let two = IntPolynomial::constant(BigInt::from(2));
    let mut q = &IntPolynomial::from_i64s(&[0, 0, 4]) - &two;
    for _ in 0..n - 2 {
        q = &(&q * &q) - &two;
    }
    let half: Vec<BigInt> = q
        .coeffs()
        .iter()
        .map(|c| {
            let (d, r) = c.div_rem(&BigInt::from(2));
            debug_assert!(r.is_zero());
            d
        })
        .collect();
    Ok(IntPolynomial::new(half))
}

/// c_{n,m} = (−1)^m 2^{n+2m−2}/(2^{n−2}+m) · C(2^{n−2}+m, 2^{n−2}−m).
pub fn closed_coefficient(n: u32, m: i64) -> Result<BigInt> {
    let h = 1i64 << (n - 2);
    let num = (BigInt::one() << (n as i64 + 2 * m - 2) as usize) * binom(h + m, h - m);
    let (q, r) = num.div_rem(&BigInt::from(h + m));
    if !r.is_zero() {
        return Err(Error::Internal(format!("c_{{{n},{m}}} is not an integer")));
    }
    Ok(if m % 2 == 1 { -q } else { q })
}

pub fn closed_minpoly(n: u32) -> Result<IntPolynomial> {
    require_level(n, 2, MAX_MINPOLY_LEVEL)?;
    let h = 1i64 << (n - 2);
    let mut coeffs = vec![BigInt::zero(); 2 * h as usize + 1];
    coeffs[0] = BigInt::one();
    for m in 1..=h {
        coeffs[2 * m as usize] = closed_coefficient(n, m)?;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// max |f_n(±cos((2i−1)π/2^n))| over the first-quadrant angles.
pub fn verify_minpoly_roots(n: u32, ctx: &EvalContext) -> Result<Float> {
    let f = closed_minpoly(n)?;
    let mut worst = ctx.zero();
    for i in 1..=(1i64 << (n - 2)) {
        let c = ctx.cos_pi_dyadic(2 * i - 1, n);
        for x in [c.clone(), -c] {
            let r = f.eval(&x, ctx).abs();
            if r > worst {
                worst = r;
            }
        }
    }
    Ok(worst)
}

/// f_n(2x²−1) = f_{n+1}(x). Holds for n ≥ 3; at n = 2 the composition is −f_3.
pub fn verify_halving_recursion(n: u32) -> Result<bool> {
    require_level(n, 2, MAX_MINPOLY_LEVEL - 1)?;
    let inner = IntPolynomial::from_i64s(&[-1, 0, 2]);
    Ok(closed_minpoly(n)?.compose(&inner) == closed_minpoly(n + 1)?)
}

/// Σ_{i=0}^{r} (−1)^i 2^{2i−1}/(r+i)·C(r+i, r−i)·C(2i, k) against 2^k/(2r+k)·C(2r+k, 2r−k).
///
/// Both sides are returned as computed. They agree for even r; for odd r the
/// left side is the negative of the right side.
pub fn lemma_sum_identity(r: i64, k: i64) -> Result<(BigRational, BigRational)> {
    if r < 1 || k < 1 || k > r {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= r, got r={r}, k={k}")));
    }
    let mut lhs = BigRational::zero();
    for i in 0..=r {
        let c = binom(2 * i, k);
        if c.is_zero() {
            continue;
        }
        let num = binom(r + i, r - i) * c;
        let pow = if i == 0 {
            BigRational::new(BigInt::one(), BigInt::from(2))
        } else {
            BigRational::from_integer(BigInt::one() << (2 * i - 1) as usize)
        };
        let term = pow * BigRational::new(num, BigInt::from(r + i));
        if i % 2 == 1 {
            lhs -= term;
        } else {
            lhs += term;
        }
    }
    let rhs = BigRational::new(
        (BigInt::one() << k as usize) * binom(2 * r + k, 2 * r - k),
        BigInt::from(2 * r + k),
    );
    Ok((lhs, rhs))
}

/// The r = 2^{n−2} case used to derive the closed form from the halving recursion.
pub fn lemma_power_of_two(n: u32, k: i64) -> Result<(BigRational, BigRational)> {
    require_level(n, 2, 20)?;
    lemma_sum_identity(1i64 << (n - 2), k)
}
