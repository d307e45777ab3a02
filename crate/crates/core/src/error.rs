use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("incompatible blocks: pair ({0}, {1}) oriented both ways")]
    Incompatible(usize, usize),
    #[error("solver backend: {0}")]
    Backend(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// True for failures of the environment rather than of the input.
    pub fn is_infrastructure(&self) -> bool {
        matches!(self, Error::Backend(_) | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
