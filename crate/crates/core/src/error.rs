//! Error types shared across the model modules.

use thiserror::Error;

/// Errors produced while building machines or evaluating model operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A spec field is missing, inconsistent, or out of range. `field` names
    /// the offending parameter path.
    #[error("configuration error at `{field}`: {message}")]
    Config { field: String, message: String },

    /// An argument is outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation has no closed form for exponential speedups.
    #[error("unsupported for exponential speedup: {0}")]
    ExponentialUnsupported(String),

    /// A grid or series argument is malformed.
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
