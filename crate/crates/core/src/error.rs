use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero index must be at least 1 (got 0)")]
    ZeroIndex,
    #[error("bessel order {0} is outside the supported range |m| <= {max}", max = crate::bessel::MAX_ORDER)]
    OrderOutOfRange(i64),
    #[error("zero index {0} exceeds the supported maximum {max}", max = crate::bessel::MAX_ZERO_INDEX)]
    ZeroIndexOutOfRange(usize),
    #[error("quadrature order must be positive")]
    EmptyRule,
    #[error("angular grid of {count} points aliases modes up to |m| = {m_max} (need at least {needed})")]
    Aliasing { count: usize, m_max: usize, needed: usize },
    #[error("window (N = {n}, M = {m}) exceeds the available coefficients (N <= {n_max}, M <= {m_max})")]
    WindowOutOfRange { n: usize, m: i64, n_max: usize, m_max: usize },
    #[error("radial integral for mode (m = {m}, n = {n}) is not finite")]
    NonFiniteCoefficient { m: i64, n: usize },
    #[error("truncation pair (N = {n}, M = {m}) violates N >= A*M + 1 with A = {a}")]
    PolicyViolation { n: usize, m: usize, a: f64 },
    #[error("angular orders in a truncation policy must be strictly increasing")]
    PolicyOrdering,
    #[error("truncation policy has no windows")]
    EmptyPolicy,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown test function `{0}`")]
    UnknownFunction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
