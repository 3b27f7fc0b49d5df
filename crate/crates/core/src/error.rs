use thiserror::Error;

use crate::product::landscape::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monoid mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("{what} has size {size}, which exceeds the cap {cap}")]
    CapExceeded {
        what: String,
        size: usize,
        cap: usize,
    },

    #[error("excluded factor {0}: product factors must be non-trivial")]
    ExcludedFactor(String),

    #[error("invalid landscape: {}", format_violations(.0))]
    InvalidLandscape(Vec<Violation>),

    #[error("invalid congruence parameters: {0}")]
    InvalidParameters(String),

    #[error("elements are not H-related")]
    NotHRelated,

    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }

    pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Self {
        Error::Mismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
