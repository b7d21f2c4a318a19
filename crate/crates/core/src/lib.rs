//! Biorthogonal graph Fourier analysis for directed random-walk diffusion.
//!
//! The crate builds the random-walk operator `P = D_out⁻¹ A` of a weighted
//! digraph, diagonalizes it with a biorthogonal eigenbasis (`V`, `U* = V⁻¹`),
//! and uses that basis for analysis/synthesis, diffusion filtering, stability
//! bounds, and bandlimited sampling with least-squares reconstruction.
//!
//! All numerics are generic over [`Real`] (`f64` or `f32`); the aliases at the
//! crate root fix the double-precision types most callers want.

pub mod bgft;
pub mod digraph;
mod error;
pub mod linalg;
pub mod markov;
pub mod sampling;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

pub type Matrix = linalg::DenseMatrix<f64>;
pub type Matrix32 = linalg::DenseMatrix<f32>;
pub type Eigen = linalg::EigenDecomposition<f64>;
pub type Svd = linalg::SvdResult<f64>;

pub type Graph = digraph::DirectedGraph<f64>;
pub type Graph32 = digraph::DirectedGraph<f32>;
pub type Transition = markov::TransitionOperator<f64>;
pub type Stationary = markov::StationaryDistribution<f64>;
pub type Basis = bgft::BgftBasis<f64>;
pub type Basis32 = bgft::BgftBasis<f32>;
pub type Filter = bgft::FilterSpec<f64>;
pub type Energy = bgft::EnergyReport<f64>;
pub type Reconstruction = sampling::Reconstruction<f64>;
pub type Report = sampling::ReconstructionReport<f64>;
