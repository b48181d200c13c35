use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates an operation's precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A point or argument lies outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Explicit spherical-harmonic bases exist only for d = 2 and d = 3.
    #[error("unsupported dimension d = {0} (explicit bases require d = 2 or d = 3)")]
    UnsupportedDimension(usize),
    /// The tridiagonal eigen-solver did not converge.
    #[error("eigen-solver failed to converge for eigenvalue {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },
    /// Exact integer arithmetic overflowed.
    #[error("integer overflow computing {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
