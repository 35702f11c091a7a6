use thiserror::Error;

/// Errors raised by the engine.
///
/// Verification mismatches are not errors; they are reported as data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VpvError {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A closed form or catalog entry is internally inconsistent.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("unknown identity id `{0}`")]
    UnknownId(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, VpvError>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(VpvError::Argument(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(VpvError::Domain(msg.into()))
}

pub(crate) fn integrity<T>(msg: impl Into<String>) -> Result<T> {
    Err(VpvError::Integrity(msg.into()))
}
