use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition of an identity does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The requested space does not exist in the catalog.
    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),
    /// Uniform sampling is not available for the space.
    #[error("unsupported sampling: {0}")]
    UnsupportedSampling(String),
    /// Inputs that do not fit together (mismatched spaces, bad shapes).
    #[error("usage error: {0}")]
    Usage(String),
    /// A point violates the invariants of its space.
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    /// A series did not reach the requested tolerance within the term cap.
    #[error("series did not converge after {terms} terms (error estimate {estimate:e}, tolerance {tol:e})")]
    NonConvergence { terms: usize, estimate: f64, tol: f64 },
    /// Two evaluation routes of the same quantity disagree.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::Error::Domain(alloc::format!($($arg)*)) };
}
pub(crate) use domain;
