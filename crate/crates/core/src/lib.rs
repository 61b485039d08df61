//! Exact power-of-cosine transforms over dyadic angles (2i−1)π/2^n.
//!
//! Every exact construction here has a numeric counterpart evaluated with
//! MPFR through [`EvalContext`], so results can be cross-checked at any
//! precision.

pub mod chebyshev;
pub mod error;
pub mod even_power;
pub mod exact;
pub mod matrix;
pub mod minpoly;
pub mod negative_power;
pub mod numeric;
pub mod odd_power;
pub mod poly;
pub mod series;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::{DyadicAngle, Sign};
pub use matrix::{BasisTag, BasisVector, ScaledMatrix};
pub use numeric::EvalContext;
pub use poly::{IntPolynomial, RatPolynomial};
