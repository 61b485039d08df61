//! cos^r for odd r ≥ 1 over the odd-cosine basis: M with scale 1/2^{r−1}.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

use crate::error::{require_level, Error, Result};
use crate::exact::{binom, floor_div, mod_pos, mul_mod_pow2, pow_mod_pow2, Sign, MAX_LEVEL};
use crate::matrix::{BasisTag, BasisVector, ScaledMatrix};
use crate::numeric::EvalContext;

/// Row i, column m receives sign·first_row[j].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermSign {
    pub m: i64,
    pub q_parity: u8,
}

impl PermSign {
    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.q_parity == 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub i64);

fn check_odd_power(r: i64) -> Result<()> {
    if r < 1 || r % 2 == 0 {
        return Err(Error::InvalidArgument(format!("expected a positive odd power, got {r}")));
    }
    Ok(())
}

fn check_index(v: i64, n: u32) -> Result<()> {
    if v < 1 || v > 1i64 << (n - 2) {
        return Err(Error::InvalidArgument(format!("index {v} outside [1, {}]", 1i64 << (n - 2))));
    }
    Ok(())
}

/// Σ_k (−1)^k [C(r, (r−1)/2 − (k·2^{n−1}+p−1)) − C(r, (r−1)/2 − ((k+1)·2^{n−1}−p))].
///
/// Valid for any p in [1, 2^{n−1}]; beyond 2^{n−2} it is the antisymmetric
/// continuation e(p) = −e(2^{n−1}−p+1).
pub fn first_row_entry(r: i64, n: u32, p: i64) -> BigInt {
    let h = (r - 1) / 2;
    let half = 1i64 << (n - 1);
    let mut acc = BigInt::zero();
    let mut k = 0;
    loop {
        let a = h - (k * half + p - 1);
        let b = h - ((k + 1) * half - p);
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

pub fn first_row(r: i64, n: u32) -> Result<Vec<BigInt>> {
    check_odd_power(r)?;
    require_level(n, 2, MAX_LEVEL)?;
    Ok((1..=1i64 << (n - 2)).map(|j| first_row_entry(r, n, j)).collect())
}

pub fn perm_sign(i: i64, j: i64, n: u32) -> Result<PermSign> {
    require_level(n, 2, MAX_LEVEL)?;
    check_index(i, n)?;
    check_index(j, n)?;
    let quarter = 1i64 << (n - 2);
    let p = 2 * i * j - i - j + 1;
    let s = floor_div(p - 1, quarter)?;
    let signed = if s % 2 == 0 { p - s * quarter } else { -(p - s * quarter) };
    let m = mod_pos(signed, quarter + 1)?;
    let q = floor_div(quarter + 2 * i * j - i - j, 2 * quarter)?;
    Ok(PermSign { m, q_parity: (q & 1) as u8 })
}

pub fn matrix_scatter(r: i64, n: u32) -> Result<ScaledMatrix> {
    let row = first_row(r, n)?;
    let dim = row.len();
    let mut entries = vec![vec![BigInt::zero(); dim]; dim];
    for i in 1..=dim as i64 {
        for j in 1..=dim as i64 {
            let ps = perm_sign(i, j, n)?;
            let slot = &mut entries[i as usize - 1][ps.m as usize - 1];
            if !slot.is_zero() {
                return Err(Error::Internal(format!("row {i} column {} filled twice", ps.m)));
            }
            *slot = ps.sign().apply(row[j as usize - 1].clone());
        }
    }
    ScaledMatrix::new(entries, r - 1, BasisTag::OddCos(n))
}

/// Position p ∈ [1, 2^{n−1}] and quotient parity of (i+j−1)(2i−1)^{2^{n−2}−1} by 2^{n−1}.
fn gather_index(i: i64, j: i64, n: u32) -> (i64, bool) {
    let e = (1u64 << (n - 2)) - 1;
    let x = mul_mod_pow2(i + j - 1, pow_mod_pow2(2 * i - 1, e, n), n);
    let half = 1u64 << (n - 1);
    ((x % half) as i64, x >= half)
}

pub fn matrix_gather(r: i64, n: u32) -> Result<ScaledMatrix> {
    check_odd_power(r)?;
    require_level(n, 2, MAX_LEVEL)?;
    let dim = 1i64 << (n - 2);
    let entries = (1..=dim)
        .map(|i| {
            (1..=dim)
                .map(|j| {
                    let (p, odd) = gather_index(i, j, n);
                    Sign::from_parity(odd).apply(first_row_entry(r, n, p))
                })
                .collect()
        })
        .collect();
    ScaledMatrix::new(entries, r - 1, BasisTag::OddCos(n))
}

pub fn group_op(a: GroupElement, b: GroupElement, n: u32) -> Result<GroupElement> {
    Ok(GroupElement(perm_sign(a.0, b.0, n)?.m))
}

/// {1..2^{n−2}} under the unsigned part of the perm-sign law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGroup {
    n: u32,
    table: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupAxioms {
    pub closure: bool,
    pub associative: bool,
    pub commutative: bool,
    pub identity: bool,
    pub inverses: bool,
    pub cyclic: bool,
}

impl GroupAxioms {
    pub fn all(&self) -> bool {
        self.closure && self.associative && self.commutative && self.identity && self.inverses && self.cyclic
    }
}

impl CyclicGroup {
    pub fn new(n: u32) -> Result<Self> {
        require_level(n, 2, 14)?;
        let order = 1i64 << (n - 2);
        let mut table = Vec::with_capacity(order as usize);
        for a in 1..=order {
            let mut row = Vec::with_capacity(order as usize);
            for b in 1..=order {
                row.push(perm_sign(a, b, n)?.m);
            }
            table.push(row);
        }
        Ok(CyclicGroup { n, table })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<i64>] {
        &self.table
    }

    /// Test hook: overwrite one table cell.
    pub fn set_entry(&mut self, a: i64, b: i64, v: i64) {
        self.table[a as usize - 1][b as usize - 1] = v;
    }

    pub fn op(&self, a: i64, b: i64) -> i64 {
        self.table[a as usize - 1][b as usize - 1]
    }

    pub fn inverse(&self, a: i64) -> Option<i64> {
        (1..=self.order() as i64).find(|&b| self.op(a, b) == 1)
    }

    /// The smallest element whose powers reach every element.
    pub fn generator(&self) -> Option<i64> {
        let order = self.order();
        (1..=order as i64).find(|&g| {
            let mut seen = vec![false; order];
            let mut x = g;
            for _ in 0..order {
                if x < 1 || x as usize > order || seen[x as usize - 1] {
                    return false;
                }
                seen[x as usize - 1] = true;
                x = self.op(x, g);
            }
            true
        })
    }

    pub fn verify_axioms(&self) -> GroupAxioms {
        let order = self.order() as i64;
        let range = 1..=order;
        let closure = self.table.iter().flatten().all(|v| range.contains(v));
        if !closure {
            return GroupAxioms {
                closure,
                associative: false,
                commutative: false,
                identity: false,
                inverses: false,
                cyclic: false,
            };
        }
        let elems: Vec<i64> = range.collect();
        let associative = elems.iter().all(|&a| {
            elems.iter().all(|&b| elems.iter().all(|&c| self.op(self.op(a, b), c) == self.op(a, self.op(b, c))))
        });
        let commutative = elems.iter().all(|&a| elems.iter().all(|&b| self.op(a, b) == self.op(b, a)));
        let identity = elems.iter().all(|&a| self.op(1, a) == a && self.op(a, 1) == a);
        let inverses = elems.iter().all(|&a| self.inverse(a).is_some());
        GroupAxioms { closure, associative, commutative, identity, inverses, cyclic: self.generator().is_some() }
    }
}

pub fn verify_numeric(m: &ScaledMatrix, r: i64, ctx: &EvalContext) -> Result<Float> {
    let r = i32::try_from(r).map_err(|_| Error::InvalidArgument(format!("power {r} too large")))?;
    Ok(m.power_residual(r, ctx))
}

pub fn is_normal(m: &ScaledMatrix) -> bool {
    m.is_normal()
}

pub fn commutes(a: &ScaledMatrix, b: &ScaledMatrix) -> Result<bool> {
    a.commutes(b)
}

/// M(i,j) = s(a,i)·s(a,j)·M(a∘i, a∘j), the relabeling induced by cos θ_1 ↦ cos θ_a.
pub fn conjugation_invariance(m: &ScaledMatrix, a: GroupElement) -> Result<bool> {
    let n = m.basis().level();
    let dim = m.dim() as i64;
    let moved: Vec<PermSign> = (1..=dim).map(|i| perm_sign(a.0, i, n)).collect::<Result<_>>()?;
    for i in 1..=dim {
        for j in 1..=dim {
            let (pi, pj) = (moved[i as usize - 1], moved[j as usize - 1]);
            let v = (pi.sign() * pj.sign()).apply(m.entry(pi.m as usize, pj.m as usize).clone());
            if &v != m.entry(i as usize, j as usize) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Row and column representations through the first row and first column:
/// A(i, i∘j) = s(i,j)·A(1, j) and A(i, j) = s(a,i)s(a,j)·A(a∘i, 1) with a = j⁻¹.
pub fn transpose_relations_hold(m: &ScaledMatrix) -> Result<bool> {
    let n = m.basis().level();
    let group = CyclicGroup::new(n)?;
    let dim = m.dim() as i64;
    for i in 1..=dim {
        for j in 1..=dim {
            let ps = perm_sign(i, j, n)?;
            let via_row = ps.sign().apply(m.entry(1, j as usize).clone());
            if &via_row != m.entry(i as usize, ps.m as usize) {
                return Ok(false);
            }
            let a = group.inverse(j).ok_or_else(|| Error::Internal(format!("{j} has no inverse")))?;
            let (si, sj) = (perm_sign(a, i, n)?, perm_sign(a, j, n)?);
            if sj.m != 1 {
                return Ok(false);
            }
            let via_col = (si.sign() * sj.sign()).apply(m.entry(si.m as usize, 1).clone());
            if &via_col != m.entry(i as usize, j as usize) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Σ_i cos^r((2i−1)π/2^n) as coefficients over the odd-cosine basis.
pub fn power_sum(r: i64, n: u32) -> Result<BasisVector> {
    let m = matrix_gather(r, n)?;
    let denom = BigInt::one() << (r - 1) as usize;
    let coeffs = m.column_sums().into_iter().map(|c| BigRational::new(c, denom.clone())).collect();
    BasisVector::new(coeffs, BasisTag::OddCos(n))
}

/// Σ_{i=1}^{2^{m−1}−1} cos^r(iπ/2^m) split by the level of the reduced fraction i/2^m.
pub fn all_angles_power_sum(r: i64, m: u32) -> Result<Vec<(u32, BasisVector)>> {
    require_level(m, 2, MAX_LEVEL)?;
    (2..=m).map(|n| Ok((n, power_sum(r, n)?))).collect()
}

/// Direct numeric value of the full sum, for cross-checking.
pub fn all_angles_power_sum_numeric(r: i64, m: u32, ctx: &EvalContext) -> Float {
    let mut acc = ctx.zero();
    for i in 1..(1i64 << (m - 1)) {
        acc += ctx.powi(&ctx.cos_pi_dyadic(i, m), r as i32);
    }
    acc
}
