use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid edge ({tail}, {head}): {msg}")]
    InvalidEdge { tail: usize, head: usize, msg: String },
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded during {0}")]
    BudgetExceeded(String),
    #[error("self-verification failed: {0}")]
    VerificationFailed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
