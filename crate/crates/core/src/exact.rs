//! Integer helpers: binomials, floor division, dyadic index folding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rug::Float;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::numeric::EvalContext;

/// Levels above this would overflow the `i64` index arithmetic.
pub const MAX_LEVEL: u32 = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn apply(self, v: BigInt) -> BigInt {
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// The angle (2i−1)π/2^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicAngle {
    pub i: i64,
    pub n: u32,
}

impl DyadicAngle {
    pub fn new(i: i64, n: u32) -> Result<Self> {
        crate::error::require_level(n, 2, MAX_LEVEL)?;
        Ok(DyadicAngle { i, n })
    }

    /// Canonical angles have 1 ≤ i ≤ 2^{n−2}.
    pub fn is_canonical(&self) -> bool {
        self.i >= 1 && self.i <= 1i64 << (self.n - 2)
    }

    pub fn numerator(&self) -> i64 {
        2 * self.i - 1
    }

    pub fn cos(&self, ctx: &EvalContext) -> Float {
        ctx.cos_pi_dyadic(self.numerator(), self.n)
    }

    pub fn sin(&self, ctx: &EvalContext) -> Float {
        ctx.sin_pi_dyadic(self.numerator(), self.n)
    }
}

/// C(r, k) for r ≥ 0; zero outside 0 ≤ k ≤ r.
pub fn binom_int(r: i64, k: i64) -> Result<BigInt> {
    if r < 0 {
        return Err(Error::NegativeUpperIndex(r));
    }
    Ok(binom(r, k))
}

pub(crate) fn binom(r: i64, k: i64) -> BigInt {
    if k < 0 || k > r {
        return BigInt::zero();
    }
    let k = k.min(r - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= r - t;
        acc /= t + 1;
    }
    acc
}

/// Generalized binomial Π_{t<k}(a−t)/k!.
pub fn binom_real(a: &Float, k: u32, ctx: &EvalContext) -> Float {
    let mut acc = ctx.float(1);
    for t in 0..k {
        let f = ctx.float(a - t);
        acc *= f;
        acc /= t + 1;
    }
    acc
}

/// Rising factorial a(a+1)···(a+k−1).
pub fn pochhammer(a: &Float, k: u32, ctx: &EvalContext) -> Float {
    let mut acc = ctx.float(1);
    for t in 0..k {
        let f = ctx.float(a + t);
        acc *= f;
    }
    acc
}

pub fn floor_div(a: i64, b: i64) -> Result<i64> {
    if b <= 0 {
        return Err(Error::NonPositiveDivisor(b));
    }
    Ok(Integer::div_floor(&a, &b))
}

pub fn mod_pos(a: i64, b: i64) -> Result<i64> {
    if b <= 0 {
        return Err(Error::NonPositiveDivisor(b));
    }
    Ok(a.mod_floor(&b))
}

/// base^exp mod 2^bits as a residue in [0, 2^bits).
pub(crate) fn pow_mod_pow2(base: i64, mut exp: u64, bits: u32) -> u64 {
    debug_assert!(bits <= 62);
    let mask = (1u128 << bits) - 1;
    let mut b = (base.rem_euclid(1i64 << bits)) as u128;
    let mut acc: u128 = 1 & mask;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc * b) & mask;
        }
        b = (b * b) & mask;
        exp >>= 1;
    }
    acc as u64
}

/// Residue of a·b modulo 2^bits.
pub(crate) fn mul_mod_pow2(a: i64, b: u64, bits: u32) -> u64 {
    let m = 1i128 << bits;
    ((a as i128 * b as i128).rem_euclid(m)) as u64
}

/// cos(tπ/2^n) = sign·cos((2k−1)π/2^n) with 1 ≤ k ≤ 2^{n−2}.
pub fn fold_odd_cos_index(t: i64, n: u32) -> Result<(i64, Sign)> {
    crate::error::require_level(n, 2, MAX_LEVEL)?;
    if t.is_even() {
        return Err(Error::EvenIndex(t));
    }
    let full = 1i64 << n;
    let mut u = t.mod_floor(&(2 * full));
    if u > full {
        u = 2 * full - u;
    }
    if u > full / 2 {
        Ok(((full - u + 1) / 2, Sign::Minus))
    } else {
        Ok(((u + 1) / 2, Sign::Plus))
    }
}

/// cos(tπ/2^{n−1}) = sign·cos(kπ/2^{n−1}) with 0 ≤ k < 2^{n−2}.
pub fn fold_even_cos_index(t: i64, n: u32) -> Result<(i64, Sign)> {
    crate::error::require_level(n, 3, MAX_LEVEL)?;
    let full = 1i64 << n;
    let mut u = t.mod_floor(&full);
    if u > full / 2 {
        u = full - u;
    }
    let quarter = full / 4;
    if u == quarter {
        Err(Error::ZeroBasisElement(t))
    } else if u > quarter {
        Ok((full / 2 - u, Sign::Minus))
    } else {
        Ok((u, Sign::Plus))
    }
}

/// sin(tπ/2^n) = sign·sin((2k−1)π/2^n) with 1 ≤ k ≤ 2^{n−2}.
pub fn fold_odd_sin_index(t: i64, n: u32) -> Result<(i64, Sign)> {
    crate::error::require_level(n, 2, MAX_LEVEL)?;
    if t.is_even() {
        return Err(Error::EvenIndex(t));
    }
    let full = 1i64 << n;
    let mut u = t.mod_floor(&(2 * full));
    let mut sign = Sign::Plus;
    if u > full {
        u -= full;
        sign = Sign::Minus;
    }
    if u > full / 2 {
        u = full - u;
    }
    Ok(((u + 1) / 2, sign))
}
