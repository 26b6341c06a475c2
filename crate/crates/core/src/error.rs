use thiserror::Error;

/// Errors raised by the toolkit's library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element or table does not fit the algebra it was used with.
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// An operation was called outside its precondition.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("term syntax error at column {column}: {message}")]
    TermSyntax { column: usize, message: String },
    /// A property that must hold failed on a concrete instance.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
