use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: length mismatches, bad shapes, invariant violations.
    #[error("invalid input: {0}")]
    Input(String),

    /// An enumeration would exceed its configured cap.
    #[error("{what} of size {requested} exceeds the configured cap of {cap}")]
    Resource {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// Text that could not be decoded (workspace files, rationals, ranges).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// The message without its category prefix.
    pub fn detail(&self) -> String {
        match self {
            Error::Input(m) | Error::Parse(m) => m.clone(),
            other => other.to_string(),
        }
    }
}
