//! cos^r for even r over {1, cos(jπ/2^{n−1})}, Merca's sum, integer power averages.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

use crate::error::{require_level, Error, Result};
use crate::exact::{binom, fold_even_cos_index, MAX_LEVEL};
use crate::matrix::{BasisTag, ScaledMatrix};
use crate::numeric::EvalContext;

fn check_even_power(r: i64) -> Result<()> {
    if r < 0 || r % 2 == 1 {
        return Err(Error::InvalidArgument(format!("expected a non-negative even power, got {r}")));
    }
    Ok(())
}

/// Σ_k (−1)^k [C(r, r/2 − (k·2^{n−1} + j)) − C(r, r/2 − ((k+1)·2^{n−1} − j))].
fn folded_bracket(r: i64, half_period: i64, j: i64) -> BigInt {
    let h = r / 2;
    let mut acc = BigInt::zero();
    let mut k = 0;
    loop {
        let a = h - (k * half_period + j);
        let b = h - ((k + 1) * half_period - j);
        if a < 0 && b < 0 {
            break;
        }
        let term = binom(r, a) - binom(r, b);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        k += 1;
    }
    acc
}

/// Scale exponent for the even matrices: 2^{r−1}, except r = 0 which is stored unscaled.
pub fn even_log2_denom(r: i64) -> i64 {
    (r - 1).max(0)
}

/// Constant entry followed by the entries for cos(jπ/2^{n−1}), j = 1..2^{n−2}−1.
pub fn even_first_row(r: i64, n: u32) -> Result<Vec<BigInt>> {
    check_even_power(r)?;
    require_level(n, 3, MAX_LEVEL)?;
    let dim = 1usize << (n - 2);
    if r == 0 {
        let mut row = vec![BigInt::zero(); dim];
        row[0] = BigInt::one();
        return Ok(row);
    }
    let half_period = 1i64 << (n - 1);
    let (constant, rem) = folded_bracket(r, half_period, 0).div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::Internal(format!("constant term for r={r}, n={n} is not even")));
    }
    let mut row = Vec::with_capacity(dim);
    row.push(constant);
    row.extend((1..dim as i64).map(|j| folded_bracket(r, half_period, j)));
    Ok(row)
}

pub fn even_matrix(r: i64, n: u32) -> Result<ScaledMatrix> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("even matrices need r >= 2, got {r}")));
    }
    let first = even_first_row(r, n)?;
    let dim = first.len();
    let mut entries = vec![vec![BigInt::zero(); dim]; dim];
    for (i, row) in entries.iter_mut().enumerate() {
        let t = 2 * i as i64 + 1;
        row[0] = first[0].clone();
        for j in 1..dim {
            let (k, sign) = fold_even_cos_index(j as i64 * t, n)?;
            if k == 0 {
                return Err(Error::Internal(format!("row {} entry {j} folded onto the constant", i + 1)));
            }
            row[k as usize] = sign.apply(first[j].clone());
        }
    }
    ScaledMatrix::new(entries, even_log2_denom(r), BasisTag::EvenCos(n))
}

/// Blocks for the angles of level m: columns for cos((2t−1)π/2^m), rows in runs of 2^{m−2}.
pub fn even_sub_blocks(m: &ScaledMatrix, level: u32) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let n = match m.basis() {
        BasisTag::EvenCos(n) => n,
        other => return Err(Error::InvalidArgument(format!("expected an even-cosine matrix, got {other:?}"))),
    };
    if level < 2 || level >= n {
        return Err(Error::InvalidArgument(format!("sub-block level must be in [2, {}], got {level}", n - 1)));
    }
    let step = 1usize << (n - 1 - level);
    let size = 1usize << (level - 2);
    let cols: Vec<usize> = (0..size).map(|t| (2 * t + 1) * step + 1).collect();
    Ok(m
        .rows()
        .chunks(size)
        .map(|rows| rows.iter().map(|row| cols.iter().map(|&c| row[c - 1].clone()).collect()).collect())
        .collect())
}

pub fn verify_even(m: &ScaledMatrix, r: i64, ctx: &EvalContext) -> Result<Float> {
    let r = i32::try_from(r).map_err(|_| Error::InvalidArgument(format!("power {r} too large")))?;
    Ok(m.power_residual(r, ctx))
}

/// −½ + (N/2^{2p+1}) Σ_{|k| ≤ ⌊p/N⌋} C(2p, p+kN).
pub fn merca_sum(big_n: i64, p: i64) -> Result<BigRational> {
    if big_n < 2 || p < 1 {
        return Err(Error::InvalidArgument(format!("need N >= 2 and p >= 1, got N={big_n}, p={p}")));
    }
    let kmax = p / big_n;
    let inner: BigInt = (-kmax..=kmax).map(|k| binom(2 * p, p + k * big_n)).sum();
    let scaled = BigRational::new(inner * big_n, BigInt::one() << (2 * p + 1) as usize);
    Ok(scaled - BigRational::new(BigInt::one(), BigInt::from(2)))
}

/// Σ_{k=1}^{⌊(N−1)/2⌋} cos^{2p}(kπ/N).
pub fn merca_lhs(big_n: i64, p: i64, ctx: &EvalContext) -> Float {
    let mut acc = ctx.zero();
    for k in 1..=(big_n - 1) / 2 {
        let c = (ctx.pi() * k / big_n).cos();
        acc += ctx.powi(&c, 2 * p as i32);
    }
    acc
}

/// Σ_k (−1)^k [C(2p, p − k·2^{n−1}) − C(2p, p − (k+1)·2^{n−1})], an integer.
pub fn integer_power_average(p: i64, n: u32) -> Result<BigInt> {
    if p < 0 {
        return Err(Error::InvalidArgument(format!("p must be non-negative, got {p}")));
    }
    require_level(n, 2, MAX_LEVEL)?;
    Ok(folded_bracket(2 * p, 1i64 << (n - 1), 0))
}

/// Σ_i (2cos((2i−1)π/2^n))^{2p} / 2^{n−2}.
pub fn integer_power_average_numeric(p: i64, n: u32, ctx: &EvalContext) -> Float {
    let mut acc = ctx.zero();
    for i in 1..=(1i64 << (n - 2)) {
        let c = ctx.cos_pi_dyadic(2 * i - 1, n) * 2u32;
        acc += ctx.powi(&c, 2 * p as i32);
    }
    acc >> (n - 2)
}
