use thiserror::Error;

/// Errors produced by the coamoeba library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("operation is undefined for the zero polynomial")]
    EmptyPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported rank {0} (polytope and fan operations need 1 <= n <= 3)")]
    UnsupportedRank(usize),

    #[error("integer overflow in exact lattice arithmetic")]
    Overflow,

    #[error("root finder did not converge after {iterations} iterations (worst residual ratio {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("roots are not distinct: {0}")]
    RepeatedRoots(String),

    #[error("roots are cocircular; use the real-line constructions instead")]
    Cocircular,

    #[error("line is not real (roots are not cocircular)")]
    NotReal,

    #[error("point {0} coincides with a root of the parametrization")]
    AtRoot(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
