use std::fmt;

/// Errors produced by constructors, checkers, and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the valid region (bad interval, support
    /// outside bounds, invalid probability, malformed mixture).
    Domain(String),
    /// A named hypothesis of an operation does not hold for the inputs.
    Precondition(String),
    /// A numerical routine failed to meet its accuracy or convergence
    /// target. Carries diagnostics.
    Numeric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn numeric(msg: impl Into<String>) -> Error {
    Error::Numeric(msg.into())
}
