use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial with negative upper index {0} is not supported")]
    NegativeUpperIndex(i64),
    #[error("divisor must be positive, got {0}")]
    NonPositiveDivisor(i64),
    #[error("index {0} must be odd")]
    EvenIndex(i64),
    #[error("argument {0} folds onto cos(pi/2) = 0, which is not a basis element")]
    ZeroBasisElement(i64),
    #[error("level n = {n} is out of range: {reason}")]
    Level { n: u32, reason: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    ZeroPolynomial,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_level(n: u32, min: u32, max: u32) -> Result<()> {
    if n < min {
        return Err(Error::Level { n, reason: "below the minimum supported level" });
    }
    if n > max {
        return Err(Error::Level { n, reason: "above the maximum supported level" });
    }
    Ok(())
}
