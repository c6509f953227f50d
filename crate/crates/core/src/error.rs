use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate point set: duplicate point ({x}, {y})")]
    DegeneratePointSet { x: i64, y: i64 },

    #[error("empty pattern")]
    EmptyPattern,

    #[error("empty text")]
    EmptyText,

    #[error("empty permutation")]
    EmptyPermutation,

    #[error("inflation needs one block per entry: got {blocks} blocks for length {len}")]
    BlockCountMismatch { len: usize, blocks: usize },

    #[error("inflation block {0} is empty")]
    EmptyBlock(usize),

    #[error("size at position {0} is zero")]
    ZeroSize(usize),

    #[error("cap must be positive")]
    ZeroCap,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("instance too large for oracle verification: {0}")]
    TooLargeForOracle(String),

    #[error("epsilon must satisfy 0 < epsilon < 1/2, got {0}")]
    EpsilonOutOfRange(String),

    #[error("threshold precondition unmet: {0}")]
    ThresholdUnmet(String),

    #[error("instance too large: text length {len} exceeds the cap {cap}")]
    InstanceTooLarge { len: String, cap: usize },

    #[error("operation requires an inflated gap instance, got branch {0}")]
    NotInflated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
