use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition {
        parts: Vec<usize>,
        reason: &'static str,
    },

    #[error("degree n = {n} outside the supported range 1..={max}")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("level m = {m} outside 0..={max} for n = {n}")]
    LevelOutOfRange { n: usize, m: usize, max: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation {images:?}: {reason}")]
    InvalidPermutation {
        images: Vec<usize>,
        reason: &'static str,
    },

    #[error("pairs {pairs:?} are not in standard form for n = {n}: {reason}")]
    NotStandardForm {
        n: usize,
        pairs: Vec<(usize, usize)>,
        reason: &'static str,
    },

    #[error("pairs {pairs:?} overlap or are not ordered within themselves")]
    OverlappingPairs { pairs: Vec<(usize, usize)> },

    #[error("multiplicity of {partition} is {value}, not a nonnegative integer")]
    NonIntegralMultiplicity { partition: String, value: String },

    #[error("basis of size {size} exceeds the configured limit {limit}")]
    BasisTooLarge { size: String, limit: usize },

    #[error("cache file {path} is inconsistent: {reason}")]
    CorruptCache { path: PathBuf, reason: String },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
