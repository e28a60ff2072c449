//! Exact rational linear algebra: scalars, sparse vectors and matrices,
//! echelon forms, kernels and complements.

mod basis;
mod matrix;
pub mod rational;
mod span;
mod sparse;

pub use basis::{BasisElement, GradedBasis};
pub use matrix::{
    determinant_is_nonzero, echelon_basis, kernel_basis, quotient_complement, rank, row_reduce,
    solve, RowReduction, SparseMatrix,
};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use span::{extend_basis, Span};
pub use sparse::SparseVec;
