//! Dense complex linear algebra: matrices, vectors, Jacobi SVD and Hermitian
//! eigensolver, norms, PSD square roots, polar decomposition and
//! conjugate-linear isometries.

mod decomp;
mod isometry;
mod matrix;

pub use decomp::{
    eigh, frobenius_norm, inverse, is_unitary, operator_norm, polar_decompose, pseudo_inverse, rank,
    singular_values, sqrt_psd, sqrt_psd_tol, svd, trace_norm, Eigh, PolarDecomposition, Svd,
};
pub use isometry::ConjLinearIsometry;
pub use matrix::{c64, rank_one, ComplexMatrix, ComplexVector, C64};

pub(crate) use matrix::add_rank_one;
