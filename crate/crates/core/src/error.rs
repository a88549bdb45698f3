use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("zero module has no {0} morphism")]
    ZeroModule(&'static str),
    #[error("unsplit factor: {0}")]
    UnsplitFactor(String),
    #[error("extend resolution: {0}")]
    ExtendResolution(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
