use thiserror::Error;

/// Errors surfaced by the exact linear algebra kernel and everything built on it.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("containment violated: {0}")]
    NotContained(String),
    #[error("filtration id {0} out of range 1..={1}")]
    FiltrationId(usize, usize),
    #[error("filtration count mismatch: {0} vs {1}")]
    FiltrationCount(usize, usize),
    #[error("not a filtered morphism: {0}")]
    NotFiltered(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("chain not ascending at level {0}")]
    ChainNotAscending(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resolution truncated too short: {0}")]
    Truncated(String),
    #[error("invalid ring construction: {0}")]
    BadRing(String),
    #[error("invalid ring map: {0}")]
    BadRingMap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
