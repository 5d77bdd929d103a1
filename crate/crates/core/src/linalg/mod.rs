//! Exact integer linear algebra over arbitrary-precision integers.

mod matrix;
mod snf;
mod sparse;
mod structure;
mod subquotient;

use thiserror::Error;

pub use matrix::IntMatrix;
pub use snf::{
    cokernel_structure, image_basis, kernel_basis, smith_normal_form, solve_integer, LinearSolver, Smith,
};
pub use sparse::{Cokernel, CokernelCoordinates, SparseMatrix, SparseVec};
pub use structure::AbelianGroupStructure;
pub use subquotient::{lattices_equal, AbelianHom, Subquotient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid invariant factors {0:?}: need entries >= 2 forming a divisibility chain")]
    InvalidInvariantFactors(Vec<String>),
    #[error("not an integer: {0:?}")]
    InvalidInteger(String),
    #[error("generator column {column} does not lie in the ambient lattice")]
    NotASubmodule { column: usize },
    #[error("homomorphism is not well defined on generator {generator}")]
    NotWellDefined { generator: usize },
}
