use thiserror::Error;

/// Errors produced by every fallible operation in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The request is well-formed but too large for the exact machinery.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A hypothesis the caller must certify does not hold.
    #[error("contract violated: {0}")]
    Contract(String),

    /// The sparsity hypothesis `wp(F, i) <= limit` failed; carries the observed value.
    #[error("sparsity hypothesis failed: wp = {wp} exceeds {limit}")]
    WpHypothesis { wp: u64, limit: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("construction failed after {attempts} attempt(s): {detail}")]
    ConstructionFailure {
        attempts: u32,
        detail: String,
        /// `histogram[h]` counts pairs of random sets meeting in exactly `h` vertices
        /// (last attempt only).
        histogram: Vec<u64>,
    },

    /// An exhaustive enumeration hit a budget limit before finishing.
    #[error("budget exhausted ({detail}); best so far: {best_so_far:?}")]
    BudgetExceeded {
        detail: String,
        best_so_far: Option<u64>,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
