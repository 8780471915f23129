//! Exact linear algebra over `E_e`.

mod matrix;
mod subspace;

pub use matrix::MatrixE;
pub use subspace::{Flag, Subspace};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows of unequal length")]
    Ragged,
    #[error("matrix is singular")]
    Singular,
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
    #[error("subspaces do not form a strictly decreasing chain from the ambient space to zero")]
    NotAFlag,
    #[error(transparent)]
    Arith(#[from] ArithError),
}
