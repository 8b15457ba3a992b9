//! Dense column-major matrices and the symmetric eigensolver everything
//! else is built on.

mod jacobi;
mod matrix;

pub use jacobi::{rank_tolerance, sym_eig, EigenDecomposition};
pub(crate) use matrix::norm;
pub use matrix::{gram, matmul, t_matmul, transpose, Matrix};
