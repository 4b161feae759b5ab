use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("invalid ring: {0}")]
    Ring(String),
    #[error("polynomials live in different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("invalid parameters: {0}")]
    Params(String),
    /// The requested derivation has no solution by this route.
    #[error("degenerate: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
