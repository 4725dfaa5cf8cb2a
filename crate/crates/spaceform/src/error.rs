use std::io;

/// Errors surfaced by the std front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed flags or an inconsistent flag combination.
    #[error("usage: {0}")]
    Usage(String),
    /// Input JSON that does not parse or does not describe a valid object.
    #[error("input: {0}")]
    Input(String),
    /// Reading or writing a file failed.
    #[error("io: {0}")]
    Io(#[from] io::Error),
    /// A kernel operation rejected its arguments.
    #[error("{name}: {0}", name = .0.name())]
    Geometry(#[from] spaceform_core::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Input(e.to_string())
    }
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, Error>;
