use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MzvError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("did not converge: {0}")]
    NoConvergence(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
}

pub type Result<T> = std::result::Result<T, MzvError>;
