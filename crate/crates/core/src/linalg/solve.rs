//! Inverse via partially pivoted LU, and SVD-based least squares.

use num_complex::Complex;

use super::matrix::DenseMatrix;
use super::svd::{singular_values, svd};
use crate::error::{Error, Result};
use crate::scalar::{abs1, Real};

const SINGULAR_RATIO: f64 = 1e-14;
/// Relative singular-value cutoff deciding numerical rank in least squares.
pub const LSTSQ_RANK_TOL: f64 = 1e-12;

/// `M⁻¹`, or [`Error::Singular`] once `σ_min ≤ 1e-14·σ_max`.
pub fn inverse<T: Real>(m: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = m.ensure_square()?;
    let s = singular_values(m)?;
    let (smax, smin) = (s[0], s[n - 1]);
    if smax == T::zero() || smin <= T::tol(SINGULAR_RATIO) * smax {
        let ratio = if smax == T::zero() { 0.0 } else { (smin / smax).to_f64_lossy() };
        return Err(Error::Singular { ratio });
    }

    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let pivot =
            (k..n).max_by(|&a, &b| abs1(lu[(a, k)]).partial_cmp(&abs1(lu[(b, k)])).unwrap().then(b.cmp(&a))).unwrap();
        if abs1(lu[(pivot, k)]) == T::zero() {
            return Err(Error::Singular { ratio: 0.0 });
        }
        if pivot != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            perm.swap(k, pivot);
        }
        let d = lu[(k, k)];
        for i in (k + 1)..n {
            let f = lu[(i, k)] / d;
            lu[(i, k)] = f;
            if f.re == T::zero() && f.im == T::zero() {
                continue;
            }
            for j in (k + 1)..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }

    let zero = Complex::new(T::zero(), T::zero());
    let mut inv = DenseMatrix::zeros(n, n);
    let mut col = vec![zero; n];
    for j in 0..n {
        // Solve L U x = P e_j.
        for i in 0..n {
            col[i] = if perm[i] == j { Complex::new(T::one(), T::zero()) } else { zero };
        }
        for i in 0..n {
            let mut acc = col[i];
            for k in 0..i {
                acc -= lu[(i, k)] * col[k];
            }
            col[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = col[i];
            for k in (i + 1)..n {
                acc -= lu[(i, k)] * col[k];
            }
            col[i] = acc / lu[(i, i)];
        }
        inv.set_column(j, &col);
    }
    Ok(inv)
}

/// Least-squares solution with rank metadata.
#[derive(Debug, Clone)]
pub struct LstsqSolution<T> {
    pub solution: Vec<Complex<T>>,
    pub rank: usize,
    pub rank_deficient: bool,
    pub singular_values: Vec<T>,
}

/// Minimum-norm minimizer of `‖b·c − y‖₂`; singular values at or below
/// `1e-12·σ_max` are treated as zero.
pub fn lstsq<T: Real>(b: &DenseMatrix<T>, y: &[Complex<T>]) -> Result<LstsqSolution<T>> {
    if y.len() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: format!("rhs of length {}", b.rows()),
            found: format!("length {}", y.len()),
        });
    }
    let k = b.cols();
    let dec = svd(b)?;
    let u = dec.u.as_ref().expect("vectors requested");
    let v = dec.v.as_ref().expect("vectors requested");
    let rank = dec.rank(T::tol(LSTSQ_RANK_TOL));
    let zero = Complex::new(T::zero(), T::zero());
    let mut c = vec![zero; k];
    for r in 0..rank {
        let coeff = (0..b.rows()).fold(zero, |acc, i| acc + u[(i, r)].conj() * y[i]) / dec.singular_values[r];
        for (j, cj) in c.iter_mut().enumerate() {
            *cj += v[(j, r)] * coeff;
        }
    }
    Ok(LstsqSolution { solution: c, rank, rank_deficient: rank < k, singular_values: dec.singular_values })
}
