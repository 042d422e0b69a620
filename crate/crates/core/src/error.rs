use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid generator `{0}` for this surface")]
    InvalidGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("truncation overflow: {0}")]
    Overflow(String),
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error("unsupported chord degree {0}")]
    UnsupportedDegree(usize),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}
