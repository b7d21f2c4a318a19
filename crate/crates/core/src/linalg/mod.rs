//! Dense complex linear-algebra kernels.

mod eig;
mod matrix;
mod solve;
mod svd;

pub(crate) use eig::scale_columns;
pub use eig::{eig_general, EigenDecomposition, MAX_EIG_DIM};
pub use matrix::{complexify, vec_dot, vec_norm, vec_sub, DenseMatrix};
pub use solve::{inverse, lstsq, LstsqSolution, LSTSQ_RANK_TOL};
pub use svd::{cond2, singular_values, spectral_norm2, svd, SvdResult};
