//! MPFR-backed evaluation context shared by every numeric check.

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float, Integer};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct EvalContext {
    precision: u32,
    tolerance: Float,
}

impl EvalContext {
    /// Tolerance defaults to 2^{−precision/2}.
    pub fn new(precision_bits: u32) -> Result<Self> {
        if precision_bits < 64 {
            return Err(Error::InvalidArgument(format!(
                "precision must be at least 64 bits, got {precision_bits}"
            )));
        }
        let tolerance = Float::with_val(precision_bits, 1) >> (precision_bits / 2);
        Ok(EvalContext { precision: precision_bits, tolerance })
    }

    /// Sets the tolerance to 2^{−bits}.
    pub fn with_tolerance_log2(mut self, bits: u32) -> Self {
        self.tolerance = Float::with_val(self.precision, 1) >> bits;
        self
    }

    pub fn with_tolerance(mut self, tol: &Float) -> Result<Self> {
        if !(tol.is_finite() && *tol > 0) {
            return Err(Error::InvalidArgument("tolerance must be a positive number".into()));
        }
        self.tolerance = Float::with_val(self.precision, tol);
        Ok(self)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn tolerance(&self) -> &Float {
        &self.tolerance
    }

    pub fn within_tolerance(&self, x: &Float) -> bool {
        x.is_finite() && Float::with_val(self.precision, x.abs_ref()) < self.tolerance
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.precision, v)
    }

    pub fn parse(&self, s: &str) -> Result<Float> {
        let parsed = Float::parse(s).map_err(|e| Error::InvalidArgument(format!("{s:?}: {e}")))?;
        Ok(Float::with_val(self.precision, parsed))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.precision, Constant::Pi)
    }

    pub fn from_bigint(&self, v: &BigInt) -> Float {
        Float::with_val(self.precision, &to_rug(v))
    }

    pub fn from_rational(&self, v: &BigRational) -> Float {
        let num = self.from_bigint(v.numer());
        num / self.from_bigint(v.denom())
    }

    /// x·2^e for a possibly negative e.
    pub fn scale_pow2(&self, x: Float, e: i64) -> Float {
        if e >= 0 {
            x << (e as u32)
        } else {
            x >> ((-e) as u32)
        }
    }

    pub fn cos_pi_dyadic(&self, num: i64, level: u32) -> Float {
        let angle = (self.pi() * num) >> level;
        angle.cos()
    }

    pub fn sin_pi_dyadic(&self, num: i64, level: u32) -> Float {
        let angle = (self.pi() * num) >> level;
        angle.sin()
    }

    pub fn powi(&self, x: &Float, e: i32) -> Float {
        Float::with_val(self.precision, x.pow(e))
    }

    pub fn powf(&self, x: &Float, e: &Float) -> Float {
        Float::with_val(self.precision, x.pow(e))
    }

    pub fn arccos(&self, x: &Float) -> Float {
        Float::with_val(self.precision, x.acos_ref())
    }

    pub fn sqrt(&self, x: &Float) -> Float {
        Float::with_val(self.precision, x.sqrt_ref())
    }

    pub fn zero(&self) -> Float {
        Float::with_val(self.precision, 0)
    }
}

pub(crate) fn to_rug(v: &BigInt) -> Integer {
    let (sign, digits) = v.to_u32_digits();
    let mut out = Integer::from_digits(&digits, rug::integer::Order::Lsf);
    if sign == BigSign::Minus {
        out = -out;
    }
    out
}

/// log2 of |x|, or −∞ for zero; convenient for reporting residuals.
pub fn log2_abs(x: &Float) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        Float::with_val(64, x.abs_ref()).log2().to_f64()
    }
}
