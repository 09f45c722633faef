use thiserror::Error;

pub type Result<T> = std::result::Result<T, CggError>;

#[derive(Debug, Error)]
pub enum CggError {
    /// An argument violates a precondition (bad labels, m out of range,
    /// a set of the wrong shape).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured enumeration or search limit would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CggError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CggError::Domain(msg.into())
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        CggError::Budget(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        CggError::Parse(msg.into())
    }

    /// Process exit code: 2 for validation problems, 3 for exceeded limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CggError::Budget(_) => 3,
            _ => 2,
        }
    }
}
