use thiserror::Error;

/// Errors raised by the word operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is well-formed but exceeds a configured resource bound.
    #[error("capacity exceeded: {what} (estimated {estimated}, limit {limit})")]
    Capacity {
        what: String,
        estimated: u128,
        limit: u128,
    },

    /// Text could not be parsed into the requested value.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
