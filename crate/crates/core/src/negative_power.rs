//! sec, csc³ and csc⁵ over dyadic bases, and the closed forms S(s,n) = Σ csc^s.
//!
//! The negative-power matrices carry a multiplier rather than a divisor, so
//! their `log2_denom` is negative: −1, −3, −5 for scales 2, 8, 32.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

use crate::error::{require_level, Error, Result};
use crate::exact::{floor_div, fold_odd_sin_index, mod_pos, mul_mod_pow2, pow_mod_pow2, Sign, MAX_LEVEL};
use crate::matrix::{BasisTag, ScaledMatrix};
use crate::numeric::EvalContext;

fn pow2(e: i64) -> BigInt {
    BigInt::one() << e as usize
}

/// Quotient parity of X = (1−i−j)(1+2^{n−1}−2i)^{2^{n−2}−1} by 2^{n−1}, from X mod 2^n.
fn neg1_exponent_parity(i: i64, j: i64, n: u32) -> bool {
    let e = (1u64 << (n - 2)) - 1;
    let base = 1 + (1i64 << (n - 1)) - 2 * i;
    let x = mul_mod_pow2(1 - i - j, pow_mod_pow2(base, e, n), n);
    x >= 1u64 << (n - 1)
}

/// sec((2i−1)π/2^n) = 2 Σ_k M[i,k] cos((2k−1)π/2^n) with every entry ±1.
pub fn matrix_neg1(n: u32) -> Result<ScaledMatrix> {
    require_level(n, 3, MAX_LEVEL)?;
    let dim = 1i64 << (n - 2);
    let entries = (1..=dim)
        .map(|i| {
            (1..=dim)
                .map(|j| {
                    // (−1)^{1+q}
                    let odd = !neg1_exponent_parity(i, j, n);
                    Sign::from_parity(odd).apply(BigInt::one())
                })
                .collect()
        })
        .collect();
    ScaledMatrix::new(entries, -1, BasisTag::OddCos(n))
}

/// Target column and sign for first-row entry j in row i.
///
/// The column follows the index law p = 2ij−i−j+1, k = ⌊(p−1)/2^{n−2}⌋,
/// m = (−1)^k(p − k·2^{n−2}) mod (2^{n−2}+1). The sign is that of the sine
/// fold of (2i−1)(2j−1), which is (−1)^{⌊k/2⌋}.
fn csc_slot(i: i64, j: i64, n: u32) -> Result<(i64, Sign)> {
    let quarter = 1i64 << (n - 2);
    let p = 2 * i * j - i - j + 1;
    let k = floor_div(p - 1, quarter)?;
    let signed = if k % 2 == 0 { p - k * quarter } else { -(p - k * quarter) };
    let m = mod_pos(signed, quarter + 1)?;
    let (m_fold, sign) = fold_odd_sin_index(2 * p - 1, n)?;
    if m_fold != m {
        return Err(Error::Internal(format!("index law and sine fold disagree at ({i},{j},{n})")));
    }
    Ok((m, sign))
}

fn scatter_sine(first: &[BigInt], n: u32, log2_denom: i64) -> Result<ScaledMatrix> {
    let dim = first.len();
    let mut entries = vec![vec![BigInt::zero(); dim]; dim];
    for i in 1..=dim as i64 {
        for j in 1..=dim as i64 {
            let (m, sign) = csc_slot(i, j, n)?;
            entries[i as usize - 1][m as usize - 1] = sign.apply(first[j as usize - 1].clone());
        }
    }
    ScaledMatrix::new(entries, log2_denom, BasisTag::OddSin(n))
}

fn exact_div(num: BigInt, d: i64, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(d));
    if !r.is_zero() {
        return Err(Error::Internal(format!("{what}: {num} is not divisible by {d}")));
    }
    Ok(q)
}

/// 2·(first-row entry of csc³): 2^{n−1}j − j² + j − 2^{n−2}.
fn neg3_numerator(j: i64, n: u32) -> BigInt {
    let j = BigInt::from(j);
    pow2(n as i64 - 1) * &j - &j * &j + &j - pow2(n as i64 - 2)
}

pub fn neg3_first_row(n: u32) -> Result<Vec<BigInt>> {
    require_level(n, 3, MAX_LEVEL)?;
    (1..=1i64 << (n - 2)).map(|j| exact_div(neg3_numerator(j, n), 2, "csc^3 entry")).collect()
}

/// csc³((2i−1)π/2^n) = 8 Σ_k M[i,k] sin((2k−1)π/2^n).
pub fn matrix_neg3(n: u32) -> Result<ScaledMatrix> {
    scatter_sine(&neg3_first_row(n)?, n, -3)
}

/// Entry-wise form of the csc³ matrix: with X = (i+j−1)(2i−1)^{2^{n−2}−1},
/// P = X mod 2^{n−1}, M[i,j] = (−1)^{⌊X/2^{n−1}⌋}((2^{n−1}+1)P − P² − 2^{n−2})/2.
pub fn matrix_neg3_gather(n: u32) -> Result<ScaledMatrix> {
    require_level(n, 3, MAX_LEVEL)?;
    let dim = 1i64 << (n - 2);
    let half = 1u64 << (n - 1);
    let e = (1u64 << (n - 2)) - 1;
    let mut entries = Vec::with_capacity(dim as usize);
    for i in 1..=dim {
        let unit = pow_mod_pow2(2 * i - 1, e, n);
        let mut row = Vec::with_capacity(dim as usize);
        for j in 1..=dim {
            let x = mul_mod_pow2(i + j - 1, unit, n);
            let p = BigInt::from(x % half);
            let num = (BigInt::from(half) + 1u32) * &p - &p * &p - BigInt::from(half / 2);
            row.push(Sign::from_parity(x >= half).apply(exact_div(num, 2, "csc^3 gather entry")?));
        }
        entries.push(row);
    }
    ScaledMatrix::new(entries, -3, BasisTag::OddSin(n))
}

/// 24·(first-row entry of csc⁵).
pub(crate) fn neg5_numerator(j: i64, n: u32) -> BigInt {
    let n = n as i64;
    let j = BigInt::from(j);
    let j2 = &j * &j;
    let j3 = &j2 * &j;
    let j4 = &j3 * &j;
    j4 - BigInt::from(2) * j3 * (pow2(n - 1) + 1) + j2 * (BigInt::from(3) * pow2(n - 1) - 1)
        + BigInt::from(2) * &j * (pow2(n - 2) + pow2(3 * n - 4) + 1)
        - pow2(n - 1) * (pow2(2 * n - 3) + 1)
}

/// First row of the csc⁵ matrix and its scale exponent.
///
/// For n ≥ 4 the entries are integers and the scale is 32. At n = 3 they are
/// half-integers, so the row is doubled and the scale becomes 16.
pub fn neg5_first_row(n: u32) -> Result<(Vec<BigInt>, i64)> {
    require_level(n, 3, MAX_LEVEL)?;
    let nums: Vec<BigInt> = (1..=1i64 << (n - 2)).map(|j| neg5_numerator(j, n)).collect();
    let d24 = BigInt::from(24);
    if nums.iter().all(|v| v.is_multiple_of(&d24)) {
        Ok((nums.into_iter().map(|v| v / &d24).collect(), -5))
    } else {
        let row = nums.into_iter().map(|v| exact_div(v, 12, "csc^5 entry")).collect::<Result<_>>()?;
        Ok((row, -4))
    }
}

/// csc⁵((2i−1)π/2^n) = 32 Σ_k M[i,k] sin((2k−1)π/2^n).
pub fn matrix_neg5(n: u32) -> Result<ScaledMatrix> {
    let (first, log2) = neg5_first_row(n)?;
    scatter_sine(&first, n, log2)
}

pub fn negative_matrix(r: i64, n: u32) -> Result<ScaledMatrix> {
    match r {
        -1 => matrix_neg1(n),
        -3 => matrix_neg3(n),
        -5 => matrix_neg5(n),
        _ => Err(Error::InvalidArgument(format!("negative power {r} is not supported; use -1, -3 or -5"))),
    }
}

/// Σ_k csc^s((2k−1)π/2^n) against 2^{s−1} Σ_j M[1,j] csc((2j−1)π/2^n), s = |r|.
pub fn first_row_sum_identity(r_neg: i64, n: u32, ctx: &EvalContext) -> Result<(Float, Float)> {
    let m = match r_neg {
        -3 => matrix_neg3(n)?,
        -5 => matrix_neg5(n)?,
        _ => return Err(Error::InvalidArgument(format!("first-row identity needs r = -3 or -5, got {r_neg}"))),
    };
    let s = -r_neg;
    let lhs = s_direct(s, n, ctx)?;
    let mut rhs = ctx.zero();
    for (j, c) in m.row(1).iter().enumerate() {
        let csc = ctx.float(1) / ctx.sin_pi_dyadic(2 * j as i64 + 1, n);
        rhs += ctx.from_bigint(c) * csc;
    }
    // The stored row is M·2^{s+log2_denom}, and the identity weights M by 2^{s−1}.
    rhs = ctx.scale_pow2(rhs, -1 - m.log2_denom());
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerSumClosedForm {
    Scalar(BigRational),
    /// Weights w_j with S = Σ_j w_j csc((2j−1)π/2^n).
    CscWeights(Vec<BigRational>),
}

impl PowerSumClosedForm {
    pub fn eval(&self, n: u32, ctx: &EvalContext) -> Float {
        match self {
            PowerSumClosedForm::Scalar(v) => ctx.from_rational(v),
            PowerSumClosedForm::CscWeights(w) => {
                let mut acc = ctx.zero();
                for (j, c) in w.iter().enumerate() {
                    acc += ctx.from_rational(c) / ctx.sin_pi_dyadic(2 * j as i64 + 1, n);
                }
                acc
            }
        }
    }
}

fn weights(n: u32, den: i64, f: impl Fn(&BigInt) -> BigInt) -> PowerSumClosedForm {
    let den = BigInt::from(den);
    PowerSumClosedForm::CscWeights(
        (1..=1i64 << (n - 2)).map(|j| BigRational::new(f(&BigInt::from(j)), den.clone())).collect(),
    )
}

/// Closed forms of S(s,n) for 2 ≤ s ≤ 8: scalars for even s, csc weights for odd s.
///
/// The linear coefficient of S(7,n) uses 4·2^{n−1}; the variant with 4·2^{2n−1}
/// does not match the direct sums.
pub fn s_closed_form(s: i64, n: u32) -> Result<PowerSumClosedForm> {
    require_level(n, 3, MAX_LEVEL)?;
    let n = n as i64;
    let a = pow2(n - 1);
    let t = |k: i64| pow2(k * n - k);
    let scalar = |num: BigInt, den: i64| PowerSumClosedForm::Scalar(BigRational::new(num, BigInt::from(den)));
    let out = match s {
        2 => scalar(t(2), 2),
        4 => scalar(t(4) + 2 * t(2), 6),
        6 => scalar(2 * t(6) + 5 * t(4) + 8 * t(2), 30),
        8 => scalar(17 * t(8) + 56 * t(6) + 98 * t(4) + 144 * t(2), 630),
        3 => weights(n as u32, 1, |j| -2 * j * j + 2 * (&a + 1) * j - &a),
        5 => weights(n as u32, 3, |j| {
            let j2 = j * j;
            2 * &j2 * &j2 - 4 * (&a + 1) * &j2 * j + 2 * (3 * &a - 1) * &j2
                + 2 * (t(3) + &a + 2) * j
                - (t(3) + 2 * &a)
        }),
        7 => weights(n as u32, 45, |j| {
            let j2 = j * j;
            let j3 = &j2 * j;
            -4 * &j3 * &j3 + 12 * (&a + 1) * &j3 * &j2 - 10 * (3 * &a - 2) * &j2 * &j2
                - 20 * (t(3) + 2 * &a + 3) * &j3
                + 2 * (15 * t(3) + 45 * &a - 8) * &j2
                + 4 * (3 * t(5) + 5 * t(3) + 4 * &a + 12) * j
                - 3 * (2 * t(5) + 5 * t(3) + 8 * &a)
        }),
        _ => return Err(Error::InvalidArgument(format!("S(s,n) closed forms cover 2 <= s <= 8, got {s}"))),
    };
    Ok(out)
}

/// Σ_j csc^s((2j−1)π/2^n) evaluated directly.
pub fn s_direct(s: i64, n: u32, ctx: &EvalContext) -> Result<Float> {
    require_level(n, 2, MAX_LEVEL)?;
    let s = i32::try_from(s).map_err(|_| Error::InvalidArgument(format!("power {s} too large")))?;
    let mut acc = ctx.zero();
    for j in 1..=1i64 << (n - 2) {
        acc += ctx.powi(&ctx.sin_pi_dyadic(2 * j - 1, n), -s);
    }
    Ok(acc)
}
