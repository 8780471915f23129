//! Filtered `(φ, N)`-modules: validation, slope and Hodge invariants, weak
//! admissibility, duals, twists and direct sums.

mod admissibility;
mod block;
mod hodge;
mod module;

pub use admissibility::{is_etale, is_weakly_admissible, WeakAdmissibility};
pub use block::{Block, BlockDefect, Orientation};
pub use hodge::{HodgeChainError, HodgeData};
pub use module::{validate_module, FilteredPhiNModule, GradedPiece, RawModule, Subquotient};

use std::fmt;

use thiserror::Error;

use crate::arith::ArithError;
use crate::classify::EnumError;
use crate::linalg::LinalgError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    NotCommuting,
    NotNilpotent,
    PhiSingular,
    HodgeNotChain,
    BlockMismatch,
    /// Shape problems: zero dimension, label count, matrix sizes.
    Dimension,
}

impl ViolationKind {
    pub fn code(self) -> &'static str {
        match self {
            ViolationKind::NotCommuting => "NOT_COMMUTING",
            ViolationKind::NotNilpotent => "NOT_NILPOTENT",
            ViolationKind::PhiSingular => "PHI_SINGULAR",
            ViolationKind::HodgeNotChain => "HODGE_NOT_CHAIN",
            ViolationKind::BlockMismatch => "BLOCK_MISMATCH",
            ViolationKind::Dimension => "VALIDATION",
        }
    }
}

/// One failed module invariant. `witness` lists offending matrix entries
/// `(row, col)` where that makes sense (block index in the row slot for
/// block defects).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
    pub witness: Vec<(usize, usize)>,
}

impl Violation {
    pub fn new(kind: ViolationKind, message: impl Into<String>) -> Self {
        Violation {
            kind,
            message: message.into(),
            witness: Vec::new(),
        }
    }

    fn at(mut self, i: usize, j: usize) -> Self {
        self.witness.push((i, j));
        self
    }

    fn with(mut self, entries: Vec<(usize, usize)>) -> Self {
        self.witness = entries;
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.code(), self.message)?;
        if !self.witness.is_empty() {
            let shown: Vec<String> = self.witness.iter().take(8).map(|(i, j)| format!("({i},{j})")).collect();
            write!(f, " at {}", shown.join(" "))?;
            if self.witness.len() > 8 {
                write!(f, " …")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid module: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ValidationError(pub Vec<Violation>);

impl ValidationError {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.0.iter().any(|v| v.kind == kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiModError {
    #[error(transparent)]
    Validation(ValidationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Enum(#[from] EnumError),
}

impl From<ArithError> for PhiModError {
    fn from(e: ArithError) -> Self {
        PhiModError::Linalg(LinalgError::Arith(e))
    }
}
