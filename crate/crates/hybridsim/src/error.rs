//! Crate-wide error type.
//!
//! Two broad classes map onto the CLI exit codes: configuration problems
//! (bad config file, unparsable quantity, unknown key or species) exit with
//! code 2, computation problems (domain violations, numerical failures,
//! budget overruns) exit with code 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a mathematical precondition (non-positive length,
    /// empty range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Text failed to parse as a quantity. `position` is the byte offset of
    /// the offending character.
    #[error("parse error at byte {position} in `{input}`: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    /// Ion species not in the registry.
    #[error("unknown ion species `{symbol}`; registered species: {registered}")]
    UnknownSpecies { symbol: String, registered: String },

    /// A config value carried the wrong dimension.
    #[error("unit mismatch for key `{key}`: expected {expected}, got {actual}")]
    UnitMismatch {
        key: String,
        expected: String,
        actual: String,
    },

    /// Malformed or incomplete configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Numerical failure during a computation (NaN, truncation-guard
    /// violation, non-convergence).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A heat budget exceeded a stage's cooling power.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code for this error: 2 for configuration problems, 1 for
    /// computation problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::UnknownSpecies { .. }
            | Error::UnitMismatch { .. }
            | Error::Config(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
