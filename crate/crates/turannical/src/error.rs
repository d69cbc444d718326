use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument or precondition violation. Maps to CLI exit code 2.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A count or formula exceeded 64-bit range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// Denseness ratio requested for a hypergraph with no hyperedges.
    #[error("denseness ratio undefined: hypergraph has no hyperedges")]
    UndefinedRatio,

    /// Malformed JSON input, with byte offset and field path when known.
    #[error("invalid {what} JSON at byte {offset} (path {path}): {message}")]
    Json {
        what: &'static str,
        offset: usize,
        path: String,
        message: String,
    },

    /// Malformed CSV input.
    #[error("invalid CSV at line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
