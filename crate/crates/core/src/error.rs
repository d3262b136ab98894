use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("undefined factorization: zero polynomial")]
    UndefinedFactorization,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("element is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: i64 },
    #[error("polynomial division is not exact: {0}")]
    InexactDivision(String),
    #[error("trace of idempotent is not a polynomial in z: {0}")]
    NonPolynomialTrace(String),
    #[error("|n| = {n} exceeds the configured bound {bound}")]
    DegreeBound { n: i64, bound: u32 },
    #[error("{0} is not a non-zero root of p")]
    NotANonZeroRoot(String),
    #[error("missing corrector witness in degree {0}")]
    MissingCorrector(i64),
    #[error("representation undefined: p(q^k zeta) = {value} is not positive at k = {k}")]
    SignViolation { k: usize, value: f64 },
    #[error("negative radicand {0} in one-dimensional representation")]
    NegativeRadicand(f64),
}
