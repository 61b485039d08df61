//! Exact integer matrices with a power-of-two scale over a dyadic basis.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::EvalContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// Column k is cos((2k−1)π/2^n).
    OddCos(u32),
    /// Column 1 is the constant 1, column j ≥ 2 is cos((j−1)π/2^{n−1}).
    EvenCos(u32),
    /// Column k is sin((2k−1)π/2^n).
    OddSin(u32),
}

impl BasisTag {
    pub fn level(self) -> u32 {
        match self {
            BasisTag::OddCos(n) | BasisTag::EvenCos(n) | BasisTag::OddSin(n) => n,
        }
    }

    pub fn dim(self) -> usize {
        1usize << (self.level() - 2)
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisTag::OddCos(_) => "cos",
            BasisTag::EvenCos(_) => "even-cos",
            BasisTag::OddSin(_) => "sin",
        }
    }

    /// Value of basis element `k` (1-based).
    pub fn element(self, k: usize, ctx: &EvalContext) -> Float {
        let k = k as i64;
        match self {
            BasisTag::OddCos(n) => ctx.cos_pi_dyadic(2 * k - 1, n),
            BasisTag::OddSin(n) => ctx.sin_pi_dyadic(2 * k - 1, n),
            BasisTag::EvenCos(n) => {
                if k == 1 {
                    ctx.float(1)
                } else {
                    ctx.cos_pi_dyadic(k - 1, n - 1)
                }
            }
        }
    }

    /// The angle whose power row `i` (1-based) expands.
    pub fn row_angle_value(self, i: usize, ctx: &EvalContext) -> Float {
        let t = 2 * i as i64 - 1;
        match self {
            BasisTag::OddCos(n) | BasisTag::EvenCos(n) => ctx.cos_pi_dyadic(t, n),
            BasisTag::OddSin(n) => ctx.sin_pi_dyadic(t, n),
        }
    }
}

/// value = entries / 2^{log2_denom}; a negative log2_denom is a multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledMatrix {
    entries: Vec<Vec<BigInt>>,
    log2_denom: i64,
    basis: BasisTag,
}

impl ScaledMatrix {
    pub fn new(entries: Vec<Vec<BigInt>>, log2_denom: i64, basis: BasisTag) -> Result<Self> {
        let dim = basis.dim();
        if entries.len() != dim {
            return Err(Error::DimensionMismatch(entries.len(), dim));
        }
        if let Some(row) = entries.iter().find(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch(row.len(), dim));
        }
        Ok(ScaledMatrix { entries, log2_denom, basis })
    }

    pub fn identity(basis: BasisTag) -> Self {
        let dim = basis.dim();
        let entries = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        ScaledMatrix { entries, log2_denom: 0, basis }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn log2_denom(&self) -> i64 {
        self.log2_denom
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i - 1]
    }

    /// 1-based access, like every other index in this crate.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i - 1][j - 1]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i - 1][j - 1]
    }

    pub fn into_entries(self) -> Vec<Vec<BigInt>> {
        self.entries
    }

    pub fn transpose(&self) -> ScaledMatrix {
        let d = self.dim();
        let entries = (0..d).map(|i| (0..d).map(|j| self.entries[j][i].clone()).collect()).collect();
        ScaledMatrix { entries, ..*self }
    }

    pub fn mul_exact(&self, rhs: &ScaledMatrix) -> Result<Vec<Vec<BigInt>>> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch(self.dim(), rhs.dim()));
        }
        let d = self.dim();
        let mut out = vec![vec![BigInt::zero(); d]; d];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    out[i][j] += a * &rhs.entries[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn is_normal(&self) -> bool {
        let t = self.transpose();
        self.mul_exact(&t).ok() == t.mul_exact(self).ok()
    }

    pub fn commutes(&self, other: &ScaledMatrix) -> Result<bool> {
        if self.basis != other.basis {
            return Err(Error::InvalidArgument(format!(
                "bases differ: {:?} vs {:?}",
                self.basis, other.basis
            )));
        }
        Ok(self.mul_exact(other)? == other.mul_exact(self)?)
    }

    /// Swap the odd cosine and sine presentations by reversing row and column order.
    pub fn reversed(&self) -> Result<ScaledMatrix> {
        let basis = match self.basis {
            BasisTag::OddCos(n) => BasisTag::OddSin(n),
            BasisTag::OddSin(n) => BasisTag::OddCos(n),
            BasisTag::EvenCos(_) => {
                return Err(Error::InvalidArgument("the even-cosine basis has no sine reversal".into()))
            }
        };
        let entries = self
            .entries
            .iter()
            .rev()
            .map(|row| row.iter().rev().cloned().collect())
            .collect();
        Ok(ScaledMatrix { entries, log2_denom: self.log2_denom, basis })
    }

    /// Σ_k M[i,k]·basis_k / 2^{log2_denom}.
    pub fn row_value(&self, i: usize, ctx: &EvalContext) -> Float {
        let mut acc = ctx.zero();
        for (k, c) in self.row(i).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += ctx.from_bigint(c) * self.basis.element(k + 1, ctx);
        }
        ctx.scale_pow2(acc, -self.log2_denom)
    }

    /// max_i |target(i) − row_value(i)|.
    pub fn max_residual(&self, ctx: &EvalContext, target: impl Fn(usize) -> Float) -> Float {
        let mut worst = ctx.zero();
        for i in 1..=self.dim() {
            let r = Float::with_val(ctx.precision(), target(i) - self.row_value(i, ctx)).abs();
            if r > worst || r.is_nan() {
                worst = r;
            }
        }
        worst
    }

    /// Residual of the expansion of (row angle)^r, with r of either sign.
    pub fn power_residual(&self, r: i32, ctx: &EvalContext) -> Float {
        let basis = self.basis;
        self.max_residual(ctx, |i| ctx.powi(&basis.row_angle_value(i, ctx), r))
    }

    pub fn column_sums(&self) -> Vec<BigInt> {
        let d = self.dim();
        (0..d).map(|j| self.entries.iter().map(|row| &row[j]).sum()).collect()
    }

    /// True when every row is a signed permutation of the first row.
    pub fn rows_are_signed_permutations(&self) -> bool {
        let mut first: Vec<BigInt> = self.entries[0].iter().map(num_traits::Signed::abs).collect();
        first.sort();
        self.entries.iter().all(|row| {
            let mut r: Vec<BigInt> = row.iter().map(num_traits::Signed::abs).collect();
            r.sort();
            r == first
        })
    }
}

impl fmt::Display for ScaledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        write!(f, "scale 2^{} over {:?}", -self.log2_denom, self.basis)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    coeffs: Vec<BigRational>,
    basis: BasisTag,
}

impl BasisVector {
    pub fn new(coeffs: Vec<BigRational>, basis: BasisTag) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(Error::DimensionMismatch(coeffs.len(), basis.dim()));
        }
        Ok(BasisVector { coeffs, basis })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn eval(&self, ctx: &EvalContext) -> Float {
        let mut acc = ctx.zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += ctx.from_rational(c) * self.basis.element(k + 1, ctx);
        }
        acc
    }
}
