use thiserror::Error;

/// Errors raised by the enumeration and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input violates a documented precondition (wrong multiplicities,
    /// malformed tableau, unknown letter, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Arguments are outside the domain of the requested quantity.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exhaustive work would exceed the configured budget.
    #[error("budget exceeded: {what} = {requested} > limit {limit}")]
    Budget {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// A series operation could not be carried out exactly.
    #[error("series error: {0}")]
    Series(String),

    /// Two independent routes to the same number disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
