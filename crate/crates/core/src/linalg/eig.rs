//! General (non-Hermitian) eigendecomposition `M = V Λ V⁻¹`.
//!
//! Pipeline: Householder reduction to upper Hessenberg form, implicitly
//! shifted single-shift complex QR to Schur form `M = Z T Zᴴ`, then
//! eigenvectors of `T` by back-substitution mapped through `Z`.
//!
//! Output conventions, all deterministic:
//! - eigenvalues ordered by descending real part; real parts equal within
//!   `1e-10` count as ties and are ordered by ascending imaginary part;
//! - eigenvector columns have unit Euclidean norm and their first
//!   largest-magnitude entry is real positive;
//! - eigenvalues closer than `1e-8` form a cluster whose eigenvector block is
//!   replaced by an orthonormal basis of the null space of `M − μI`.

use num_complex::Complex;

use super::matrix::{vec_norm, DenseMatrix};
use super::solve::inverse;
use super::svd::{cond2, svd};
use crate::error::{Error, Result};
use crate::scalar::{abs1, Real};

/// Largest dimension accepted by [`eig_general`].
pub const MAX_EIG_DIM: usize = 2048;

const CLUSTER_TOL: f64 = 1e-8;
const ORDER_TIE_TOL: f64 = 1e-10;
const DEFECT_RESIDUAL_TOL: f64 = 1e-6;
const DEFECT_DUAL_TOL: f64 = 1e-6;

/// `M = V Λ U*` with `U* = V⁻¹`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T> {
    pub eigenvalues: Vec<Complex<T>>,
    /// Right eigenvectors as unit columns.
    pub right_vectors: DenseMatrix<T>,
    /// `U* = V⁻¹`; row `k` is `u_k*`.
    pub left_dual: DenseMatrix<T>,
    /// `cond₂(V)`.
    pub cond_v: T,
    /// `‖M V − V Λ‖_F`.
    pub residual: T,
    /// `‖U* V − I‖_F`.
    pub dual_residual: T,
}

impl<T: Real> EigenDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V Λ U*`.
    pub fn reconstruct(&self) -> DenseMatrix<T> {
        let vl = scale_columns(&self.right_vectors, &self.eigenvalues);
        &vl * &self.left_dual
    }

    pub fn spectral_radius(&self) -> T {
        self.eigenvalues.iter().map(|l| l.norm()).fold(T::zero(), T::max)
    }
}

/// `V · diag(d)`.
pub(crate) fn scale_columns<T: Real>(v: &DenseMatrix<T>, d: &[Complex<T>]) -> DenseMatrix<T> {
    DenseMatrix::from_fn(v.rows(), v.cols(), |i, j| v[(i, j)] * d[j])
}

pub fn eig_general<T: Real>(m: &DenseMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = m.ensure_square()?;
    if n > MAX_EIG_DIM {
        return Err(Error::InvalidSize(format!("eigensolver limited to n <= {MAX_EIG_DIM}, got {n}")));
    }

    let (mut t, mut z) = hessenberg(m);
    schur_in_place(&mut t, &mut z)?;
    let raw_values = t.diagonal();
    let mut columns = triangular_eigenvectors(&t, &z);
    let mut values = raw_values;

    for cluster in clusters(&values, T::tol(CLUSTER_TOL)) {
        if cluster.len() < 2 {
            continue;
        }
        let basis = cluster_basis(m, &values, &cluster)?;
        for (slot, &k) in cluster.iter().enumerate() {
            columns[k] = basis[slot].clone();
        }
        // Rayleigh quotients of the replacement basis.
        for (slot, &k) in cluster.iter().enumerate() {
            values[k] = rayleigh(m, &basis[slot]);
        }
    }

    for col in &mut columns {
        let nrm = vec_norm(col);
        if nrm > T::zero() {
            col.iter_mut().for_each(|z| *z /= nrm);
        }
        fix_phase(col);
    }

    let order = eigen_order(&values, T::tol(ORDER_TIE_TOL));
    let eigenvalues: Vec<Complex<T>> = order.iter().map(|&k| values[k]).collect();
    let sorted: Vec<Vec<Complex<T>>> = order.iter().map(|&k| columns[k].clone()).collect();
    let v = DenseMatrix::from_columns(&sorted);

    let left_dual = match inverse(&v) {
        Ok(u) => u,
        Err(Error::Singular { ratio }) => {
            return Err(Error::Defective { detail: format!("eigenvector matrix is singular (sigma ratio {ratio:e})") })
        }
        Err(e) => return Err(e),
    };

    let residual = (&m.matmul(&v) - &scale_columns(&v, &eigenvalues)).frobenius_norm();
    let dual_residual = (&left_dual.matmul(&v) - &DenseMatrix::identity(n)).frobenius_norm();
    let scale = m.frobenius_norm();
    if residual > T::tol(DEFECT_RESIDUAL_TOL) * scale.max(T::min_positive_value()) {
        return Err(Error::Defective { detail: format!("eigenvector residual {residual:e}") });
    }
    if dual_residual > T::tol(DEFECT_DUAL_TOL) {
        return Err(Error::Defective { detail: format!("dual basis residual {dual_residual:e}") });
    }
    let cond_v = cond2(&v)?;
    Ok(EigenDecomposition { eigenvalues, right_vectors: v, left_dual, cond_v, residual, dual_residual })
}

/// Householder reduction `M = Q H Qᴴ`. Returns `(H, Q)`.
fn hessenberg<T: Real>(m: &DenseMatrix<T>) -> (DenseMatrix<T>, DenseMatrix<T>) {
    let n = m.rows();
    let mut h = m.clone();
    let mut q = DenseMatrix::identity(n);
    let zero = Complex::new(T::zero(), T::zero());
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        let tail = x[1..].iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
        if xnorm == T::zero() || tail == T::zero() {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == T::zero() { Complex::new(T::one(), T::zero()) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        v.iter_mut().for_each(|z| *z /= vnorm);
        let two = T::lit(2.0);

        // H ← (I − 2vvᴴ) H on rows k+1..n.
        for j in 0..n {
            let mut s = zero;
            for (r, vi) in v.iter().enumerate() {
                s += vi.conj() * h[(k + 1 + r, j)];
            }
            s *= two;
            for (r, vi) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= *vi * s;
            }
        }
        // H ← H (I − 2vvᴴ), Q ← Q (I − 2vvᴴ) on columns k+1..n.
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let mut s = zero;
                for (r, vi) in v.iter().enumerate() {
                    s += mat[(i, k + 1 + r)] * *vi;
                }
                s *= two;
                for (r, vi) in v.iter().enumerate() {
                    mat[(i, k + 1 + r)] -= s * vi.conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = zero;
        }
    }
    (h, q)
}

/// Complex Givens rotation `G = [[c, s], [−s̄, c]]` with `G·[x; y] = [r; 0]`.
fn givens<T: Real>(x: Complex<T>, y: Complex<T>) -> (T, Complex<T>, Complex<T>) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == T::zero() {
        return (T::one(), Complex::new(T::zero(), T::zero()), x);
    }
    if ax == T::zero() {
        return (T::zero(), Complex::new(T::one(), T::zero()), y);
    }
    let rho = ax.hypot(ay);
    let c = ax / rho;
    let phase = x / ax;
    let s = phase * y.conj() / rho;
    (c, s, phase * rho)
}

/// Reduces upper Hessenberg `t` to upper triangular Schur form in place,
/// accumulating the unitary transformations into `z`.
fn schur_in_place<T: Real>(t: &mut DenseMatrix<T>, z: &mut DenseMatrix<T>) -> Result<()> {
    let n = t.rows();
    if n < 2 {
        return Ok(());
    }
    let eps = T::epsilon();
    let smlnum = T::min_positive_value() / eps;
    let budget = 30 * n.max(10) * n;
    let mut total = 0usize;
    let mut its = 0usize;
    let mut ihi = n - 1;
    let zero = Complex::new(T::zero(), T::zero());
    let exceptional = T::lit(0.75);

    while ihi > 0 {
        let mut l = ihi;
        while l > 0 {
            let sub = abs1(t[(l, l - 1)]);
            let mut tst = abs1(t[(l - 1, l - 1)]) + abs1(t[(l, l)]);
            if tst == T::zero() {
                tst = (l..=ihi).map(|j| abs1(t[(j, j)]) + abs1(t[(j, j - 1)])).fold(T::zero(), |a, b| a + b);
            }
            if sub <= smlnum || sub <= eps * tst {
                t[(l, l - 1)] = zero;
                break;
            }
            l -= 1;
        }
        if l == ihi {
            ihi -= 1;
            its = 0;
            continue;
        }

        its += 1;
        total += 1;
        if total > budget {
            return Err(Error::NonConvergence { iterations: total });
        }

        let mu = if its % 20 == 10 {
            t[(l, l)] + exceptional * t[(l + 1, l)].re.abs()
        } else if its.is_multiple_of(20) {
            t[(ihi, ihi)] + exceptional * t[(ihi, ihi - 1)].re.abs()
        } else {
            wilkinson_shift(t[(ihi - 1, ihi - 1)], t[(ihi - 1, ihi)], t[(ihi, ihi - 1)], t[(ihi, ihi)])
        };

        let mut x = t[(l, l)] - mu;
        let mut y = t[(l + 1, l)];
        for k in l..ihi {
            if k > l {
                x = t[(k, k - 1)];
                y = t[(k + 1, k - 1)];
            }
            let (c, s, r) = givens(x, y);
            let first_col = if k > l {
                t[(k, k - 1)] = r;
                t[(k + 1, k - 1)] = zero;
                k
            } else {
                l
            };
            for j in first_col..n {
                let a = t[(k, j)];
                let b = t[(k + 1, j)];
                t[(k, j)] = a * c + s * b;
                t[(k + 1, j)] = b * c - s.conj() * a;
            }
            let last_row = (k + 2).min(ihi);
            for i in 0..=last_row {
                let a = t[(i, k)];
                let b = t[(i, k + 1)];
                t[(i, k)] = a * c + s.conj() * b;
                t[(i, k + 1)] = b * c - s * a;
            }
            for i in 0..n {
                let a = z[(i, k)];
                let b = z[(i, k + 1)];
                z[(i, k)] = a * c + s.conj() * b;
                z[(i, k + 1)] = b * c - s * a;
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            t[(i, j)] = zero;
        }
    }
    Ok(())
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let mid = (a - d) * half;
    let disc = (mid * mid + b * c).sqrt();
    let l1 = d + mid + disc;
    let l2 = d + mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Column `k` of the result is `Z y_k` with `(T − t_kk I) y_k = 0`, `y_k[k] = 1`.
fn triangular_eigenvectors<T: Real>(t: &DenseMatrix<T>, z: &DenseMatrix<T>) -> Vec<Vec<Complex<T>>> {
    let n = t.rows();
    let eps = T::epsilon();
    let smlnum = T::min_positive_value() / eps;
    let big = T::one() / (eps * smlnum).sqrt();
    let zero = Complex::new(T::zero(), T::zero());
    (0..n)
        .map(|k| {
            let lambda = t[(k, k)];
            let smin = (eps * abs1(lambda)).max(smlnum);
            let mut y = vec![zero; k + 1];
            y[k] = Complex::new(T::one(), T::zero());
            for i in (0..k).rev() {
                let mut acc = zero;
                for j in (i + 1)..=k {
                    acc += t[(i, j)] * y[j];
                }
                let mut denom = t[(i, i)] - lambda;
                if abs1(denom) < smin {
                    denom = Complex::new(smin, T::zero());
                }
                y[i] = -acc / denom;
                let mag = abs1(y[i]);
                if mag > big {
                    let s = T::one() / mag;
                    y.iter_mut().for_each(|v| *v *= s);
                }
            }
            (0..n).map(|i| (0..=k).fold(zero, |acc, j| acc + z[(i, j)] * y[j])).collect()
        })
        .collect()
}

/// Connected components of the relation `|λ_i − λ_j| ≤ tol`, each sorted.
fn clusters<T: Real>(values: &[Complex<T>], tol: T) -> Vec<Vec<usize>> {
    let n = values.len();
    let scale = values.iter().map(|v| v.norm()).fold(T::one(), T::max);
    let tol = tol * scale;
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start].is_some() {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        label[start] = Some(id);
        let mut cursor = 0;
        while cursor < members.len() {
            let i = members[cursor];
            for j in 0..n {
                if label[j].is_none() && (values[i] - values[j]).norm() <= tol {
                    label[j] = Some(id);
                    members.push(j);
                }
            }
            cursor += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Orthonormal basis for the eigenspace of a cluster: the right singular
/// vectors of `M − μI` belonging to its smallest singular values.
fn cluster_basis<T: Real>(
    m: &DenseMatrix<T>,
    values: &[Complex<T>],
    cluster: &[usize],
) -> Result<Vec<Vec<Complex<T>>>> {
    let n = m.rows();
    let count = T::from_usize(cluster.len()).unwrap();
    let mu = cluster.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &k| acc + values[k]) / count;
    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] -= mu;
    }
    let dec = svd(&shifted)?;
    let v = dec.v.expect("vectors requested");
    Ok(((n - cluster.len())..n).map(|j| v.column(j)).collect())
}

fn rayleigh<T: Real>(m: &DenseMatrix<T>, x: &[Complex<T>]) -> Complex<T> {
    let mx = m.matvec(x);
    let num = x.iter().zip(&mx).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
    let den = x.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
    num / den
}

/// Scales `col` so that its first (near-)largest entry is real positive.
pub(crate) fn fix_phase<T: Real>(col: &mut [Complex<T>]) {
    let max = col.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if max == T::zero() {
        return;
    }
    let cutoff = max * (T::one() - T::tol(1e-8));
    let idx = col.iter().position(|z| z.norm() >= cutoff).unwrap();
    let pivot = col[idx];
    let rot = pivot.conj() / pivot.norm();
    col.iter_mut().for_each(|z| *z *= rot);
    col[idx] = Complex::new(col[idx].re, T::zero());
}

/// Descending real part; near-equal real parts ordered by ascending imaginary part.
pub(crate) fn eigen_order<T: Real>(values: &[Complex<T>], tie_tol: T) -> Vec<usize> {
    let scale = values.iter().map(|v| v.norm()).fold(T::one(), T::max);
    let tol = tie_tol * scale;
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].re.partial_cmp(&values[a].re).unwrap().then(a.cmp(&b)));
    let mut out = Vec::with_capacity(idx.len());
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && values[idx[end - 1]].re - values[idx[end]].re <= tol {
            end += 1;
        }
        let mut group = idx[start..end].to_vec();
        group.sort_by(|&a, &b| {
            values[a]
                .im
                .partial_cmp(&values[b].im)
                .unwrap()
                .then(values[b].re.partial_cmp(&values[a].re).unwrap())
                .then(a.cmp(&b))
        });
        out.extend(group);
        start = end;
    }
    out
}
