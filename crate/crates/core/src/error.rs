use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands belong to different fields.
    #[error("field mismatch: GF(2^{left}) vs GF(2^{right})")]
    FieldMismatch { left: u32, right: u32 },

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller violated a shape or parameter precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// Linear system has fewer than `needed` independent columns.
    #[error("not decodable: rank {rank} < {needed}")]
    NotDecodable { rank: usize, needed: usize },

    /// Received symbols are inconsistent with any information vector.
    #[error("corrupt input: received symbols are inconsistent with the code")]
    CorruptInput,

    #[error("construction error: {0}")]
    Construction(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }
}
