use thiserror::Error;

/// Errors raised by the verification engine.
#[derive(Debug, Error)]
pub enum QgvError {
    /// Arguments are contradictory or outside an operation's domain.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A dense-size or enumeration budget would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Text input (descriptor, encoding, config) could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl QgvError {
    /// Short machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            QgvError::Parameter(_) => "parameter",
            QgvError::Resource(_) => "resource",
            QgvError::Parse(_) => "parse",
            QgvError::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, QgvError>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(QgvError::Parameter(msg.into()))
}
