use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Wolfram code whose local rule maps `000` to `1`.
    #[error("rule {0} is odd: it maps 000 to 1 and does not preserve finite support")]
    OddCode(u8),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("resource limit exceeded: {what} = {value} (maximum {limit})")]
    ResourceLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
