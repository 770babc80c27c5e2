use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("series has an unsupported constant term: {0}")]
    ConstantTerm(String),
    #[error("truncation caps too small: {0}")]
    CapTooSmall(String),
    #[error("expected a kernel of dimension {expected}, found {found}")]
    KernelDimension { expected: usize, found: usize },
    #[error("arithmetic invariant violated: {0}")]
    Invariant(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
