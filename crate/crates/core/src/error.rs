use thiserror::Error;

/// Errors raised while building, simulating, analyzing or parsing circuits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The circuit, gate or state is malformed (bad width, out-of-range or
    /// repeated line index, mismatched lengths).
    #[error("structural error: {0}")]
    Structural(String),

    /// A request exceeds a fixed enumeration limit.
    #[error("capacity error: {what} is limited to {limit}, got {requested}")]
    Capacity {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    /// Invalid arguments to an operation.
    #[error("usage error: {0}")]
    Usage(String),

    /// Netlist text could not be parsed. `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
