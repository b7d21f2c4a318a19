//! Biorthogonal graph Fourier transform of the random-walk operator.
//!
//! With `P = V Λ U*` and `U* V = I`, the analysis map is `x̂ = U* x` and
//! synthesis is `x = V x̂`. Diffusion `x_{t+1} = P x_t` is diagonal in these
//! coordinates (`x̂_t = Λᵗ x̂_0`), and a spectral filter is `H = V h(Λ) U*`.
//! Modes are ranked by the decay rate `ω = Re(1 − λ)`; the constant mode
//! (`λ = 1`) has `ω = 0` and comes first.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{eig_general, inverse, scale_columns, singular_values, vec_norm, DenseMatrix, EigenDecomposition};
use crate::markov::{pi_norm, StationaryDistribution, TransitionOperator};
use crate::scalar::Real;

const FREQUENCY_TIE_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-8;

/// Default diffusion time of the heat filter.
pub const DEFAULT_TAU: f64 = 2.0;

/// How modes are ranked from low to high frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrequencyOrdering {
    /// `ω = Re(1 − λ)` ascending; ties by `|Im λ|` ascending, then positive
    /// imaginary part first.
    #[default]
    DecayRate,
}

#[derive(Debug, Clone)]
pub struct BgftBasis<T> {
    pub eig: EigenDecomposition<T>,
    /// `ω_k = 1 − Re λ_k`, indexed like `eig.eigenvalues`.
    pub frequencies: Vec<T>,
    /// Mode indices from lowest to highest frequency.
    pub order: Vec<usize>,
    pub ordering: FrequencyOrdering,
    operator: DenseMatrix<T>,
}

pub fn decompose<T: Real>(op: &TransitionOperator<T>) -> Result<BgftBasis<T>> {
    decompose_with(op, FrequencyOrdering::default())
}

pub fn decompose_with<T: Real>(op: &TransitionOperator<T>, ordering: FrequencyOrdering) -> Result<BgftBasis<T>> {
    let eig = eig_general(&op.p)?;
    let frequencies: Vec<T> = eig.eigenvalues.iter().map(|l| T::one() - l.re).collect();
    let order = match ordering {
        FrequencyOrdering::DecayRate => decay_order(&eig.eigenvalues, &frequencies, T::tol(FREQUENCY_TIE_TOL)),
    };
    Ok(BgftBasis { eig, frequencies, order, ordering, operator: op.p.clone() })
}

fn decay_order<T: Real>(values: &[Complex<T>], freq: &[T], tol: T) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| freq[a].partial_cmp(&freq[b]).unwrap().then(a.cmp(&b)));
    let mut out = Vec::with_capacity(idx.len());
    for group in tie_groups(&idx, |k| freq[k], tol) {
        let mut by_mag = group.clone();
        by_mag.sort_by(|&a, &b| values[a].im.abs().partial_cmp(&values[b].im.abs()).unwrap().then(a.cmp(&b)));
        for sub in tie_groups(&by_mag, |k| values[k].im.abs(), tol) {
            let mut sub = sub;
            sub.sort_by(|&a, &b| values[b].im.partial_cmp(&values[a].im).unwrap().then(a.cmp(&b)));
            out.extend(sub);
        }
    }
    out
}

/// Splits an already sorted index list into runs whose consecutive keys
/// differ by at most `tol`.
fn tie_groups<T: Real>(sorted: &[usize], key: impl Fn(usize) -> T, tol: T) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &k in sorted {
        match groups.last_mut() {
            Some(g) if (key(k) - key(*g.last().unwrap())).abs() <= tol => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    groups
}

fn check_len<T>(x: &[Complex<T>], n: usize) -> Result<()> {
    if x.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: format!("signal of length {n}"),
            found: format!("length {}", x.len()),
        })
    }
}

impl<T: Real> BgftBasis<T> {
    pub fn n(&self) -> usize {
        self.eig.dim()
    }

    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eig.eigenvalues
    }

    /// Right eigenvectors `V`.
    pub fn v(&self) -> &DenseMatrix<T> {
        &self.eig.right_vectors
    }

    /// Left dual `U* = V⁻¹`.
    pub fn u_star(&self) -> &DenseMatrix<T> {
        &self.eig.left_dual
    }

    pub fn cond_v(&self) -> T {
        self.eig.cond_v
    }

    /// The transition matrix this basis diagonalizes.
    pub fn operator(&self) -> &DenseMatrix<T> {
        &self.operator
    }

    pub fn spectral_radius(&self) -> T {
        self.eig.spectral_radius()
    }

    /// `x̂ = U* x`.
    pub fn analyze(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        check_len(x, self.n())?;
        Ok(self.u_star().matvec(x))
    }

    /// `x = V x̂`.
    pub fn synthesize(&self, xhat: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        check_len(xhat, self.n())?;
        Ok(self.v().matvec(xhat))
    }

    /// `‖Σ_k v_k u_k* − I‖_F`.
    pub fn identity_residual(&self) -> T {
        (&self.v().matmul(self.u_star()) - &DenseMatrix::identity(self.n())).frobenius_norm()
    }

    /// `V Λᵗ U* x₀`.
    pub fn diffuse_spectral(&self, x0: &[Complex<T>], t: u32) -> Result<Vec<Complex<T>>> {
        let mut xhat = self.analyze(x0)?;
        for (c, l) in xhat.iter_mut().zip(self.eigenvalues()) {
            *c *= l.powu(t);
        }
        self.synthesize(&xhat)
    }

    /// `h(λ_k)` for every mode, indexed like the eigenvalues.
    pub fn response(&self, spec: &FilterSpec<T>) -> Result<Vec<Complex<T>>> {
        spec.validate(self.n())?;
        Ok(match spec {
            FilterSpec::Heat { tau } => {
                let tau = *tau;
                self.eigenvalues().iter().map(|&l| (-(Complex::new(T::one(), T::zero()) - l) * tau).exp()).collect()
            }
            FilterSpec::IdealLowpass { k } => {
                let mut h = vec![Complex::new(T::zero(), T::zero()); self.n()];
                for &mode in &self.order[..*k] {
                    h[mode] = Complex::new(T::one(), T::zero());
                }
                h
            }
            FilterSpec::Custom(table) => table.clone(),
        })
    }

    /// `H = V h(Λ) U*` materialized.
    pub fn filter_matrix(&self, spec: &FilterSpec<T>) -> Result<DenseMatrix<T>> {
        let h = self.response(spec)?;
        Ok(scale_columns(self.v(), &h).matmul(self.u_star()))
    }

    /// `H x` through the spectral path: analyze, scale, synthesize.
    pub fn apply_filter(&self, spec: &FilterSpec<T>, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let h = self.response(spec)?;
        let mut xhat = self.analyze(x)?;
        for (c, g) in xhat.iter_mut().zip(&h) {
            *c *= *g;
        }
        self.synthesize(&xhat)
    }

    /// `cond(V) · (max_k |λ_k|)ᵗ`, an upper bound on `‖Pᵗ‖₂`.
    pub fn iterate_bound(&self, t: u32) -> T {
        self.cond_v() * self.spectral_radius().powi(t as i32)
    }

    /// `cond(V) · max_k |h(λ_k)|`, an upper bound on `‖H‖₂`.
    pub fn filter_bound(&self, spec: &FilterSpec<T>) -> Result<T> {
        let h = self.response(spec)?;
        Ok(self.cond_v() * h.iter().map(|z| z.norm()).fold(T::zero(), T::max))
    }

    /// Eigenvector basis rescaled to unit π-norm, with π-orthonormalized
    /// blocks for clustered eigenvalues. For reversible chains this makes
    /// `Π^{1/2} V` unitary.
    pub fn pi_normalized_vectors(&self, pi: &StationaryDistribution<T>) -> Result<DenseMatrix<T>> {
        if pi.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: format!("distribution of length {}", self.n()),
                found: format!("length {}", pi.len()),
            });
        }
        let n = self.n();
        let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| self.v().column(j)).collect();
        let tol = T::tol(CLUSTER_TOL);
        let values = self.eigenvalues();
        let mut done = vec![false; n];
        for start in 0..n {
            if done[start] {
                continue;
            }
            let block: Vec<usize> =
                (start..n).filter(|&j| !done[j] && (values[j] - values[start]).norm() <= tol).collect();
            for (pos, &j) in block.iter().enumerate() {
                for &prev in &block[..pos] {
                    let proj = crate::markov::pi_inner(&cols[prev], &cols[j], pi);
                    let prev_col = cols[prev].clone();
                    for (a, b) in cols[j].iter_mut().zip(&prev_col) {
                        *a -= *b * proj;
                    }
                }
                let nrm = pi_norm(&cols[j], pi);
                cols[j].iter_mut().for_each(|z| *z /= nrm);
                done[j] = true;
            }
        }
        Ok(DenseMatrix::from_columns(&cols))
    }
}

/// Spectral response `h(λ)`.
#[derive(Debug, Clone, PartialEq)]
pub enum FilterSpec<T> {
    /// `h(λ) = exp(−τ(1 − λ))`.
    Heat { tau: T },
    /// Passes the `k` lowest-frequency modes.
    IdealLowpass { k: usize },
    /// Explicit `h(λ_k)` per mode, indexed like the eigenvalues.
    Custom(Vec<Complex<T>>),
}

impl<T: Real> FilterSpec<T> {
    pub fn heat(tau: T) -> Self {
        FilterSpec::Heat { tau }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            FilterSpec::Heat { tau } if !(tau.is_finite() && *tau >= T::zero()) => {
                Err(Error::InvalidParameter(format!("heat filter needs tau >= 0, got {tau}")))
            }
            FilterSpec::IdealLowpass { k } if *k == 0 || *k > n => {
                Err(Error::InvalidParameter(format!("ideal low-pass needs 1 <= k <= {n}, got {k}")))
            }
            FilterSpec::Custom(table) if table.len() != n => Err(Error::DimensionMismatch {
                expected: format!("{n} response samples"),
                found: format!("{}", table.len()),
            }),
            _ => Ok(()),
        }
    }
}

impl<T: Real> Default for FilterSpec<T> {
    fn default() -> Self {
        FilterSpec::Heat { tau: T::lit(DEFAULT_TAU) }
    }
}

/// `Pᵗ x₀` by repeated multiplication.
pub fn diffuse_direct<T: Real>(op: &TransitionOperator<T>, x0: &[Complex<T>], t: u32) -> Result<Vec<Complex<T>>> {
    check_len(x0, op.n())?;
    let mut x = x0.to_vec();
    for _ in 0..t {
        x = op.p.matvec(&x);
    }
    Ok(x)
}

/// π-metric energy identities for one signal.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport<T> {
    /// `‖x‖_π²`.
    pub pi_energy: T,
    /// `x̂* G_π x̂` with `G_π = V* Π V`.
    pub gram_energy: T,
    /// `‖x̂‖₂²` in the π-normalized basis.
    pub coefficient_energy: T,
    pub sigma_w_min: T,
    pub sigma_w_max: T,
    /// `‖(I − P) x‖_π²`.
    pub tv_pi: T,
    pub tv_lower: T,
    pub tv_upper: T,
}

impl<T: Real> EnergyReport<T> {
    /// `κ(W) = σ_max(W) / σ_min(W)`.
    pub fn kappa_w(&self) -> T {
        self.sigma_w_max / self.sigma_w_min
    }
}

/// Evaluates the π-Parseval identity and the diffusion-variation sandwich.
///
/// Uses the π-normalized eigenbasis (see
/// [`BgftBasis::pi_normalized_vectors`]) so that `W = Π^{1/2} V` is unitary
/// for reversible chains; both identities hold in any column scaling.
pub fn energy_report<T: Real>(
    basis: &BgftBasis<T>,
    pi: &StationaryDistribution<T>,
    x: &[Complex<T>],
) -> Result<EnergyReport<T>> {
    check_len(x, basis.n())?;
    let n = basis.n();
    let v = basis.pi_normalized_vectors(pi)?;
    let xhat = inverse(&v)?.matvec(x);

    let w = DenseMatrix::from_fn(n, n, |i, j| v[(i, j)] * pi.pi_diag_sqrt[i]);
    let sig = singular_values(&w)?;
    let sigma_w_max = sig[0];
    let sigma_w_min = sig[n - 1];

    let gram = w.adjoint().matmul(&w);
    let gx = gram.matvec(&xhat);
    let gram_energy = xhat.iter().zip(&gx).fold(Complex::new(T::zero(), T::zero()), |a, (p, q)| a + p.conj() * q).re;
    let pi_energy = pi_norm(x, pi).powi(2);

    let lx = {
        let px = basis.operator().matvec(x);
        x.iter().zip(&px).map(|(&a, &b)| a - b).collect::<Vec<_>>()
    };
    let tv_pi = pi_norm(&lx, pi).powi(2);
    let weighted = xhat
        .iter()
        .zip(basis.eigenvalues())
        .map(|(c, l)| (Complex::new(T::one(), T::zero()) - l).norm_sqr() * c.norm_sqr())
        .fold(T::zero(), |a, b| a + b);
    Ok(EnergyReport {
        pi_energy,
        gram_energy,
        coefficient_energy: vec_norm(&xhat).powi(2),
        sigma_w_min,
        sigma_w_max,
        tv_pi,
        tv_lower: sigma_w_min * sigma_w_min * weighted,
        tv_upper: sigma_w_max * sigma_w_max * weighted,
    })
}
