use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("empty point sample")]
    EmptySample,
    #[error("empty set")]
    EmptySet,
    #[error("unsupported variant: {0}")]
    UnsupportedVariant(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("ladder too shallow: depth {depth}, need at least {needed}")]
    ShallowLadder { depth: usize, needed: usize },
    #[error("invalid ladder: {0}")]
    InvalidLadder(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
