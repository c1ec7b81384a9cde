use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("relation `{name}` has arity {expected} but is applied to {found} arguments")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("{what} index {index} out of range (must be < {bound})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A computation would exceed a configured size limit.
    #[error("resource guard: {0}")]
    Guard(String),

    #[error("not closed under the operations: {0}")]
    NotClosed(String),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
