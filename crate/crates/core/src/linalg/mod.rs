//! Dense exact matrices over ℚ(i, √d) and exact linear system solving.

mod mat;
mod solve;

pub use mat::{Entry, Mat};
pub use solve::{
    coordinates, combine, complement, in_span, independent_subset, intersect, inverse, kernel,
    mat_rank, rank, rref, rref_rows, solve, solve_affine, span_basis, AffineEq, AffineSpace,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("conjugation of unknowns is undefined")]
    SymbolicConjugation,
    #[error("malformed input: {0}")]
    Malformed(String),
}
