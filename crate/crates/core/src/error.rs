use std::path::PathBuf;

use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped so that a front end can map them onto coarse exit
/// statuses via [`Error::category`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} out of range: {reason}")]
    Bounds { value: i128, reason: String },

    #[error("factorization of {n} incomplete: cofactor {cofactor} has a prime factor above the table limit {limit}")]
    IncompleteFactorization { n: u64, cofactor: u64, limit: u64 },

    #[error("series diverges: 2*alpha = {two_alpha} must exceed 1")]
    Divergence { two_alpha: f64 },

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("ceiling exceeded: {what} needs {needed}, limit is {limit}{hint}")]
    Ceiling {
        what: &'static str,
        needed: u128,
        limit: u128,
        hint: &'static str,
    },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("{path}:{line}: {message}")]
    FileFormat {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("prime {0} is not covered by the phase assignment")]
    Coverage(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite value at sample {index}: {value}")]
    Numerical { index: u64, value: f64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("interrupted after {completed} parameter points")]
    Interrupted { completed: usize },
}

/// Coarse error classes, used by the CLI for exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Usage,
    Domain,
    Io,
}

impl Error {
    pub fn category(&self) -> Category {
        match self {
            Error::Parse { .. } => Category::Usage,
            Error::Io { .. } | Error::FileFormat { .. } => Category::Io,
            _ => Category::Domain,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
