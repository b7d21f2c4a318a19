//! Random-walk operators, stationary distributions, detailed balance, and the
//! asymmetry / non-normality indices.

use num_complex::Complex;

use crate::digraph::DirectedGraph;
use crate::error::{Error, Result};
use crate::linalg::{eig_general, DenseMatrix};
use crate::scalar::Real;

/// Default relative tolerance for [`is_reversible`].
pub const REVERSIBILITY_TOL: f64 = 1e-10;

const SIMPLE_ROOT_TOL: f64 = 1e-8;
const MIN_PROBABILITY: f64 = 1e-12;

/// `P = D_out⁻¹ A` together with `L_rw = I − P`.
#[derive(Debug, Clone)]
pub struct TransitionOperator<T> {
    pub p: DenseMatrix<T>,
    pub l_rw: DenseMatrix<T>,
}

impl<T: Real> TransitionOperator<T> {
    /// Wraps an explicit row-stochastic matrix.
    pub fn from_matrix(p: DenseMatrix<T>) -> Result<Self> {
        let n = p.ensure_square()?;
        let tol = T::tol(1e-12);
        for i in 0..n {
            let row = p.row(i);
            if row.iter().any(|z| z.re < -tol || z.im.abs() > tol) {
                return Err(Error::InvalidParameter(format!("row {i} has entries outside [0, inf)")));
            }
            let sum = row.iter().fold(T::zero(), |a, z| a + z.re);
            if (sum - T::one()).abs() > tol {
                return Err(Error::InvalidParameter(format!("row {i} sums to {sum}, not 1")));
            }
        }
        let l_rw = &DenseMatrix::identity(n) - &p;
        Ok(Self { p, l_rw })
    }

    pub fn n(&self) -> usize {
        self.p.rows()
    }
}

pub fn transition<T: Real>(g: &DirectedGraph<T>) -> Result<TransitionOperator<T>> {
    let deg = g.out_degrees();
    if let Some(i) = deg.first_sink() {
        return Err(Error::SinkNode(i));
    }
    let n = g.n();
    let p = DenseMatrix::from_fn(n, n, |i, j| Complex::new(g.weight(i, j) / deg.degrees[i], T::zero()));
    let l_rw = &DenseMatrix::identity(n) - &p;
    Ok(TransitionOperator { p, l_rw })
}

/// `π > 0`, `Σπ = 1`, `πᵀP = πᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution<T> {
    pub pi: Vec<T>,
    /// Diagonal of `Π^{1/2}`.
    pub pi_diag_sqrt: Vec<T>,
}

impl<T: Real> StationaryDistribution<T> {
    /// Validates a user-supplied probability vector (positivity and unit sum).
    pub fn new(pi: Vec<T>) -> Result<Self> {
        if pi.is_empty() {
            return Err(Error::InvalidSize("empty distribution".into()));
        }
        if let Some(i) = pi.iter().position(|&p| p <= T::zero() || !p.is_finite()) {
            return Err(Error::NoPositiveVector(format!("entry {i} is {}", pi[i])));
        }
        let sum = pi.iter().fold(T::zero(), |a, &b| a + b);
        if (sum - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::InvalidParameter(format!("distribution sums to {sum}")));
        }
        let pi_diag_sqrt = pi.iter().map(|p| p.sqrt()).collect();
        Ok(Self { pi, pi_diag_sqrt })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        let v = T::one() / T::from_usize(n).unwrap();
        Self::new(vec![v; n])
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// `Π` as a dense diagonal matrix.
    pub fn diag(&self) -> DenseMatrix<T> {
        DenseMatrix::from_diagonal(&self.pi.iter().map(|&p| Complex::new(p, T::zero())).collect::<Vec<_>>())
    }

    /// `‖πᵀP − πᵀ‖₂`.
    pub fn balance_residual(&self, op: &TransitionOperator<T>) -> T {
        let n = op.n();
        (0..n)
            .map(|j| {
                let flow = (0..n).fold(T::zero(), |acc, i| acc + self.pi[i] * op.p[(i, j)].re);
                (flow - self.pi[j]).powi(2)
            })
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }
}

/// Left Perron vector from the eigendecomposition of `Pᵀ`, normalized to
/// sum 1. Periodic chains are accepted as long as eigenvalue 1 is simple.
pub fn stationary<T: Real>(op: &TransitionOperator<T>) -> Result<StationaryDistribution<T>> {
    let dec = eig_general(&op.p.transpose())?;
    let one = Complex::new(T::one(), T::zero());
    let simple_tol = T::tol(SIMPLE_ROOT_TOL);
    let multiplicity = dec.eigenvalues.iter().filter(|&&l| (l - one).norm() <= simple_tol).count();
    if multiplicity > 1 {
        return Err(Error::NotIrreducible(format!("eigenvalue 1 has multiplicity {multiplicity}")));
    }
    let k = dec
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| (*a.1 - one).norm().partial_cmp(&(*b.1 - one).norm()).unwrap())
        .map(|(k, _)| k)
        .unwrap();
    let v = dec.right_vectors.column(k);
    let sum = v.iter().fold(Complex::new(T::zero(), T::zero()), |a, &b| a + b);
    if sum.norm() <= T::tol(MIN_PROBABILITY) {
        return Err(Error::NoPositiveVector("Perron vector sums to zero".into()));
    }
    let pi: Vec<T> = v.iter().map(|&z| (z / sum).re).collect();
    let floor = T::tol(MIN_PROBABILITY);
    if pi.iter().any(|&p| p < -floor) {
        return Err(Error::NoPositiveVector("stationary vector has mixed signs".into()));
    }
    if let Some(i) = pi.iter().position(|&p| p <= floor) {
        return Err(Error::NotIrreducible(format!("stationary mass vanishes at node {i}")));
    }
    // Renormalize the real part exactly.
    let total = pi.iter().fold(T::zero(), |a, &b| a + b);
    let pi: Vec<T> = pi.into_iter().map(|p| p / total).collect();
    let pi_diag_sqrt = pi.iter().map(|p| p.sqrt()).collect();
    Ok(StationaryDistribution { pi, pi_diag_sqrt })
}

/// `‖ΠP − PᵀΠ‖_F ≤ tol·‖ΠP‖_F`.
pub fn is_reversible<T: Real>(op: &TransitionOperator<T>, pi: &StationaryDistribution<T>, tol: T) -> bool {
    let n = op.n();
    let mut diff = T::zero();
    let mut base = T::zero();
    for i in 0..n {
        for j in 0..n {
            let flow = pi.pi[i] * op.p[(i, j)].re;
            let back = pi.pi[j] * op.p[(j, i)].re;
            diff += (flow - back).powi(2);
            base += flow * flow;
        }
    }
    diff.sqrt() <= tol * base.sqrt()
}

/// `S = Π^{1/2} P Π^{−1/2}`.
pub fn symmetrize<T: Real>(op: &TransitionOperator<T>, pi: &StationaryDistribution<T>) -> DenseMatrix<T> {
    let s = &pi.pi_diag_sqrt;
    DenseMatrix::from_fn(op.n(), op.n(), |i, j| op.p[(i, j)] * (s[i] / s[j]))
}

/// `P† = Π⁻¹ Pᵀ Π`, the adjoint in the π-inner product.
pub fn pi_adjoint<T: Real>(op: &TransitionOperator<T>, pi: &StationaryDistribution<T>) -> DenseMatrix<T> {
    let p = &pi.pi;
    DenseMatrix::from_fn(op.n(), op.n(), |i, j| op.p[(j, i)] * (p[j] / p[i]))
}

/// `⟨x, y⟩_π = Σ conj(x_i) π_i y_i`.
pub fn pi_inner<T: Real>(x: &[Complex<T>], y: &[Complex<T>], pi: &StationaryDistribution<T>) -> Complex<T> {
    assert_eq!(x.len(), y.len(), "pi_inner length mismatch");
    assert_eq!(x.len(), pi.len(), "pi_inner length mismatch");
    x.iter().zip(y).zip(&pi.pi).fold(Complex::new(T::zero(), T::zero()), |acc, ((a, b), &w)| acc + a.conj() * b * w)
}

pub fn pi_norm<T: Real>(x: &[Complex<T>], pi: &StationaryDistribution<T>) -> T {
    pi_inner(x, x, pi).re.max(T::zero()).sqrt()
}

/// Directedness and non-normality of a matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralIndices<T> {
    pub alpha: T,
    pub delta: T,
}

impl<T: Real> SpectralIndices<T> {
    pub fn of(m: &DenseMatrix<T>) -> Self {
        Self { alpha: asymmetry_index(m), delta: departure_from_normality(m) }
    }
}

/// `‖M − Mᵀ‖_F / ‖M‖_F`, zero for the zero matrix.
pub fn asymmetry_index<T: Real>(m: &DenseMatrix<T>) -> T {
    let den = m.frobenius_norm();
    if den == T::zero() {
        return T::zero();
    }
    (m - &m.transpose()).frobenius_norm() / den
}

/// `‖MM* − M*M‖_F / ‖M‖_F²`, zero for the zero matrix.
pub fn departure_from_normality<T: Real>(m: &DenseMatrix<T>) -> T {
    let fro = m.frobenius_norm();
    if fro == T::zero() {
        return T::zero();
    }
    let mh = m.adjoint();
    (&m.matmul(&mh) - &mh.matmul(m)).frobenius_norm() / (fro * fro)
}
