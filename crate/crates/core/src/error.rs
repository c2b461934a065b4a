use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("inexact division: remainder {0} is nonzero")]
    Divisibility(String),

    #[error("invalid web: {0}")]
    InvalidWeb(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("identity violated: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
