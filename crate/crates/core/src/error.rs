use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("rank {rank} out of range for degree {degree}")]
    RankOutOfRange { rank: u64, degree: usize },

    #[error("degree {degree} outside supported range for {what} (allowed {min}..={max})")]
    DegreeOutOfRange {
        what: &'static str,
        degree: usize,
        min: usize,
        max: usize,
    },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("unsupported degree {degree} for {construction}: {reason}")]
    UnsupportedDegree {
        construction: &'static str,
        degree: usize,
        reason: String,
    },

    #[error("vector length {got} does not match group order {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{kind}: {left} and {right} have {agreements} agreements")]
    Validation {
        kind: &'static str,
        left: String,
        right: String,
        agreements: usize,
    },

    #[error("conflicting constraints: {0}")]
    ConflictingConstraints(String),

    #[error("eigenvalue {value} for partition {partition} is not an integer")]
    NonIntegralEigenvalue { partition: String, value: String },

    #[error("search budget exhausted: {0}")]
    SearchExhausted(String),

    #[error("parse error: {0}")]
    Parse(String),
}
