use thiserror::Error;

/// Errors reported by the library.
///
/// Sequence death is deliberately *not* an error: [`crate::recurrence::evaluate`]
/// returns a table whose status records where the recursion died.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),

    #[error("requested length must be at least 1")]
    ZeroLength,

    #[error("requested length {0} exceeds the supported maximum 2^40")]
    LengthLimit(u64),

    #[error("power series truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("snapshot materialization bound exceeded: {n} > {bound}")]
    SnapshotTooLarge { n: u64, bound: u64 },

    #[error("chop requires a snapshot strictly containing the first complete subgraph (n >= s+4); got n = {n}, s = {s}")]
    ChopTooSmall { s: u32, n: u64 },

    #[error("chop is only defined for the standard labeling")]
    ChopUnsupportedVariant,

    #[error("b-file line {line}: {reason}")]
    BFile { line: usize, reason: String },

    #[error("table is not slowly growing (first violation at index {0})")]
    NotSlowGrowing(u64),

    #[error("arithmetic overflow while evaluating index {0}")]
    Overflow(u64),

    #[error("sequence died at index {died_at} (argument {offending_argument} out of range)")]
    Died {
        died_at: u64,
        offending_argument: i128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
