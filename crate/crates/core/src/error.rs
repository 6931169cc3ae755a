//! Error type shared by the core modules.

use crate::root_system::{Family, LieType};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("rank {rank} is not valid for family {family:?}")]
    InvalidRank { family: Family, rank: usize },

    #[error("node {node} of {lie_type} does not define a compact Hermitian symmetric space")]
    NotCominuscule { lie_type: LieType, node: usize },

    #[error("node {0} is out of range")]
    NodeOutOfRange(usize),

    #[error("the word {word:?} is not a minimal coset representative: Δ(w) leaves Δ(g₁)")]
    NotMinimalCoset { word: Vec<usize> },

    #[error("subset is not an order ideal of Δ(g₁)")]
    NotAnIdeal,

    #[error("{0:?} is not a diagram automorphism")]
    NotAutomorphism(Vec<usize>),

    #[error("the improper cell (point or whole space) has no descriptor data for this operation")]
    Improper,

    #[error("reconstruction failed: Δ(w) differs from {{α : α(Z_J) ≤ a}} for a={a}, J={j:?}")]
    Reconstruction { a: i64, j: Vec<usize> },

    #[error("(a, J) = ({a}, {j:?}) is not realizable in {space}")]
    NotRealizable { a: i64, j: Vec<usize>, space: String },

    #[error("operation requires a classical type, got {0}")]
    NotClassical(LieType),

    #[error("operation requires a Grassmannian A_n/P_i, got {0}")]
    NotGrassmannian(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("set Δ(g₁) has {0} roots, more than the 128 supported by the bitset encoding")]
    TooManyRoots(usize),

    #[error("weight space spanning set exceeds the bound of {bound} lowering sequences")]
    SpanBound { bound: usize },
}
