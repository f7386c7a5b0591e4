use thiserror::Error;

/// Errors raised by the library. Every variant carries a human-readable
/// description of what was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("degree cap mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no applicable rule: {0}")]
    NoApplicableRule(String),
    #[error("certificate rejected: {0}")]
    Verify(String),
    #[error("too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
