//! Dense complex linear algebra: tensors, contractions, adjoints, inner
//! products, eigensolvers, operator norms and Schmidt rank.

mod general;
mod hermitian;
mod lu;
mod norms;
mod ops;
mod tensor;
mod tolerance;

use thiserror::Error;

pub use general::{char_poly, eig_general, poly_roots, Eigenpair, CLUSTER_GAP};
pub use hermitian::{eig_hermitian, HermitianEigen};
pub use lu::{det, inverse, Lu};
pub use norms::{operator_norm, schmidt_rank, singular_values};
pub use ops::{
    adjoint, basis_vector, inner, kron, matmul, matmul_chain, matvec, swap_map, vec_kron, vec_norm,
    vec_scale, vec_sub,
};
pub use tensor::Tensor;
pub use tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumlinError {
    #[error("{op}: shape mismatch between {left:?} and {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: Vec<usize>,
        right: Vec<usize>,
    },
    #[error("{op}: expected a matrix, got shape {shape:?}")]
    NotMatrix { op: &'static str, shape: Vec<usize> },
    #[error("expected a square matrix, got shape {0:?}")]
    NotSquare(Vec<usize>),
    #[error("invalid shape {0:?}: dimensions must be positive")]
    InvalidShape(Vec<usize>),
    #[error("data length {found} does not match shape (expected {expected})")]
    DataLength { expected: usize, found: usize },
    #[error("rows or columns of unequal length")]
    Ragged,
    #[error("non-finite entry at flat index {index}")]
    NonFinite { index: usize },
    #[error("matrix is not Hermitian (max |a - a^dagger| = {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("{routine} did not converge within {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },
    #[error("invalid tolerance (abs = {abs}, rel = {rel})")]
    InvalidTolerance { abs: f64, rel: f64 },
}
