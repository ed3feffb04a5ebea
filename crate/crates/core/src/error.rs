use thiserror::Error;

/// Errors raised by the models, the graph engine and the exporters.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range user input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size cap would be exceeded.
    #[error("resource cap exceeded: {what} ({requested} > {cap})")]
    Resource {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// A model produced data violating its own contract (asymmetric flips,
    /// non-unique flip partners, wrong facet sizes, ...).
    #[error("model consistency violated: {0}")]
    ModelConsistency(String),

    /// A constructed object failed its validity assertion.
    #[error("internal consistency violated: {0}")]
    Internal(String),

    /// The geometric crossing oracle gave different answers at two disk radii.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// A cache file did not match its recorded checksum.
    #[error("checksum mismatch in {0}")]
    Checksum(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
