use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("contour integration failed: {0}")]
    Contour(String),
    #[error("unsupported Meijer-G parameters: {0}")]
    UnsupportedParams(String),
    #[error("parameter-sum condition violated: sum(a)+sum(b)={lhs}, sum(c)+sum(d)={rhs}")]
    ParameterSum { lhs: f64, rhs: f64 },
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("sample batch is empty")]
    EmptyBatch,
}

pub type Result<T> = std::result::Result<T, Error>;
