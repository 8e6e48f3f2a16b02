use serde::Serialize;
use thiserror::Error;

use crate::recognize::{BalanceWitness, OffDiagonalResidual};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Invalid input or an operation outside its supported range.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected order {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix entry ({}, {}) is not finite", .row + 1, .col + 1)]
    NonFinite { row: usize, col: usize },

    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    #[error("argument out of range: {0}")]
    Domain(String),

    #[error("instance of order {n} exceeds the exhaustive limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("malformed residual: {0}")]
    MalformedResidual(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid index subset: {0}")]
    InvalidSubset(String),

    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },
}

/// The matrix has an unbalanced 3-cycle, so its FAS-QAP is not linearizable.
#[derive(Debug, Clone, PartialEq, Serialize, Error)]
#[error(
    "not a balanced 3-cycle matrix: triple ({}, {}, {}) has clockwise weight {} but counter-clockwise weight {}",
    .witness.i + 1, .witness.j + 1, .witness.k + 1, .witness.lhs, .witness.rhs
)]
pub struct NotBalanced {
    pub witness: BalanceWitness,
}

/// No sum matrix agrees with the input off the diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Error)]
#[error(
    "not a weak sum matrix: entry ({}, {}) misses the anchored fit by {}",
    .witness.row + 1, .witness.col + 1, .witness.residual
)]
pub struct NotWeakSum {
    pub witness: OffDiagonalResidual,
}
