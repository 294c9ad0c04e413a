use thiserror::Error;

use crate::ann::NotAnn;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by constructors and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pair ({i}, {j}) is missing from the multiplicity table")]
    MissingPair { i: usize, j: usize },
    #[error("pair ({i}, {j}) is listed more than once")]
    DuplicatePair { i: usize, j: usize },
    #[error("pair ({i}, {j}) has multiplicity {value}; multiplicities must be at least 1")]
    NonPositiveMultiplicity { i: usize, j: usize, value: i64 },
    #[error("multiplicity {value} on pair ({i}, {j}) exceeds the supported maximum {max}")]
    MultiplicityTooLarge { i: usize, j: usize, value: i64, max: i64 },
    #[error("vertex index {index} is out of range for {vertex_count} vertices")]
    IndexOutOfRange { index: usize, vertex_count: usize },
    #[error("edge ({i}, {j}) must satisfy i < j")]
    UnorderedPair { i: usize, j: usize },
    #[error("{vertex_count} vertices is outside the supported range {min}..={max}")]
    VertexCount { vertex_count: usize, min: usize, max: usize },
    #[error("vertex subset must be strictly increasing: {members:?}")]
    InvalidSubset { members: Vec<usize> },
    #[error("subset of size {size} is too small; at least {min} vertices are required")]
    SubsetTooSmall { size: usize, min: usize },
    #[error("multiplicity is not in the balanced cone: triple ({i}, {j}, {k}) violates {detail}")]
    NotBalanced { i: usize, j: usize, k: usize, detail: String },
    #[error(transparent)]
    NotAnn(#[from] NotAnn),
    #[error("size mismatch: expected {expected} vertices, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("instance too large for exhaustive search: {reason}")]
    InstanceTooLarge { reason: String },
    #[error("ordering is not a permutation of 0..{vertex_count}")]
    NotAPermutation { vertex_count: usize },
    #[error("edge ({i}, {j}) appears with both signs")]
    ConflictingSigns { i: usize, j: usize },
    #[error("loop at vertex {vertex} is not allowed in a signed graph")]
    Loop { vertex: usize },
    #[error("structure parameter {ell} is too small (minimum {min})")]
    TooSmall { ell: usize, min: usize },
    #[error("pair ({i}, {j}) would receive multiplicity {value} < 1")]
    NonPositiveResult { i: usize, j: usize, value: i64 },
    #[error("vertex {vertex} is not a free vertex")]
    NotAFreeVertex { vertex: usize },
    #[error("budget of {budget} instances exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid input: {0}")]
    Format(String),
}
