//! Complex singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! Columns of a working copy are rotated pairwise until mutually orthogonal;
//! singular values are the final column norms. The method is slow compared
//! with bidiagonal QR but delivers singular values to high relative accuracy,
//! which the conditioning diagnostics depend on.

use num_complex::Complex;

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// Thin SVD `M = U Σ Vᴴ` with `U` m×r, `V` n×r, r = min(m, n).
#[derive(Debug, Clone)]
pub struct SvdResult<T> {
    /// Nonincreasing, nonnegative.
    pub singular_values: Vec<T>,
    pub u: Option<DenseMatrix<T>>,
    pub v: Option<DenseMatrix<T>>,
}

impl<T: Real> SvdResult<T> {
    pub fn sigma_max(&self) -> T {
        self.singular_values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn sigma_min(&self) -> T {
        self.singular_values.last().copied().unwrap_or_else(T::zero)
    }

    /// Number of singular values above `rel_tol · σ_max`.
    pub fn rank(&self, rel_tol: T) -> usize {
        let cutoff = rel_tol * self.sigma_max();
        self.singular_values.iter().filter(|&&s| s > cutoff).count()
    }
}

/// Singular values only.
pub fn singular_values<T: Real>(m: &DenseMatrix<T>) -> Result<Vec<T>> {
    Ok(svd_impl(m, false)?.singular_values)
}

/// Full thin SVD with singular vectors.
pub fn svd<T: Real>(m: &DenseMatrix<T>) -> Result<SvdResult<T>> {
    svd_impl(m, true)
}

fn svd_impl<T: Real>(m: &DenseMatrix<T>, want_vectors: bool) -> Result<SvdResult<T>> {
    if m.rows() >= m.cols() {
        jacobi_tall(m, want_vectors)
    } else {
        // M = (Mᴴ)ᴴ = (U' Σ V'ᴴ)ᴴ = V' Σ U'ᴴ
        let r = jacobi_tall(&m.adjoint(), want_vectors)?;
        Ok(SvdResult { singular_values: r.singular_values, u: r.v, v: r.u })
    }
}

fn jacobi_tall<T: Real>(m: &DenseMatrix<T>, want_vectors: bool) -> Result<SvdResult<T>> {
    let rows = m.rows();
    let n = m.cols();
    let zero = Complex::new(T::zero(), T::zero());
    // Column-major working storage.
    let mut a: Vec<Vec<Complex<T>>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Complex<T>>> = if want_vectors {
        (0..n)
            .map(|j| {
                let mut e = vec![zero; n];
                e[j] = Complex::new(T::one(), T::zero());
                e
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut norms: Vec<T> = a.iter().map(|c| sq_norm(c)).collect();

    let eps = T::epsilon();
    let tiny = T::min_positive_value() / eps;
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha <= tiny || beta <= tiny {
                    continue;
                }
                let gamma = dot(&a[p], &a[q]);
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Phase-align column q so the coupling becomes real.
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (g + g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, p, q, phase, c, s);
                if want_vectors {
                    rotate(&mut v, p, q, phase, c, s);
                }
                norms[p] = sq_norm(&a[p]);
                norms[q] = sq_norm(&a[q]);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NonConvergence { iterations: MAX_SWEEPS });
    }

    let sigmas: Vec<T> = norms.iter().map(|x| x.sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigmas[j].partial_cmp(&sigmas[i]).unwrap().then(i.cmp(&j)));
    let singular_values: Vec<T> = order.iter().map(|&j| sigmas[j]).collect();

    let (u, vmat) = if want_vectors {
        let u_cols: Vec<Vec<Complex<T>>> = order
            .iter()
            .map(|&j| {
                let s = sigmas[j];
                if s > tiny {
                    a[j].iter().map(|&z| z / s).collect()
                } else {
                    vec![zero; rows]
                }
            })
            .collect();
        let v_cols: Vec<Vec<Complex<T>>> = order.iter().map(|&j| v[j].clone()).collect();
        (Some(DenseMatrix::from_columns(&u_cols)), Some(DenseMatrix::from_columns(&v_cols)))
    } else {
        (None, None)
    };
    Ok(SvdResult { singular_values, u, v: vmat })
}

fn sq_norm<T: Real>(x: &[Complex<T>]) -> T {
    x.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b)
}

fn dot<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
    x.iter().zip(y).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
}

/// `w = phase·col_q`, then `(col_p, w) ← (c·col_p − s·w, s·col_p + c·w)`.
fn rotate<T: Real>(cols: &mut [Vec<Complex<T>>], p: usize, q: usize, phase: Complex<T>, c: T, s: T) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let w = *y * phase;
        let xp = *x;
        *x = xp * c - w * s;
        *y = xp * s + w * c;
    }
}

/// `σ_max(M)`.
pub fn spectral_norm2<T: Real>(m: &DenseMatrix<T>) -> Result<T> {
    Ok(singular_values(m)?.first().copied().unwrap_or_else(T::zero))
}

/// `σ_max / σ_min`, infinite once `σ_min ≤ 1e-14·σ_max`.
pub fn cond2<T: Real>(m: &DenseMatrix<T>) -> Result<T> {
    m.ensure_square()?;
    let s = singular_values(m)?;
    let smax = s[0];
    let smin = *s.last().unwrap();
    if smax == T::zero() || smin <= T::tol(1e-14) * smax {
        Ok(T::infinity())
    } else {
        Ok(smax / smin)
    }
}
