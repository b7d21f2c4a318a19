//! Diffusion-bandlimited signals, sampling sets, and least-squares
//! reconstruction with noise-sensitivity certificates.
//!
//! Randomness comes from `ChaCha20Rng` (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`. Gaussian draws use `rand_distr::StandardNormal`
//! and sample sets use `rand::seq::index::sample`, sorted ascending.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::bgft::BgftBasis;
use crate::error::{Error, Result};
use crate::linalg::{lstsq, singular_values, spectral_norm2, vec_norm, DenseMatrix, LSTSQ_RANK_TOL};
use crate::scalar::Real;

/// The deterministic generator behind every seeded routine in this module.
pub type SeededRng = ChaCha20Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Sorted, distinct mode indices `Ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandSupport {
    omega: Vec<usize>,
}

impl BandSupport {
    pub fn new(n: usize, mut omega: Vec<usize>) -> Result<Self> {
        omega.sort_unstable();
        validate_index_set(n, &omega, "band")?;
        Ok(Self { omega })
    }

    pub fn indices(&self) -> &[usize] {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.omega.binary_search(&k).is_ok()
    }
}

/// Sorted, distinct sampled nodes `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingSet {
    nodes: Vec<usize>,
}

impl SamplingSet {
    pub fn new(n: usize, mut nodes: Vec<usize>) -> Result<Self> {
        nodes.sort_unstable();
        validate_index_set(n, &nodes, "sampling set")?;
        Ok(Self { nodes })
    }

    pub fn all(n: usize) -> Self {
        Self { nodes: (0..n).collect() }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `P_M x`.
    pub fn sample<T: Real>(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        self.nodes.iter().map(|&i| x[i]).collect()
    }
}

fn validate_index_set(n: usize, sorted: &[usize], what: &str) -> Result<()> {
    if sorted.is_empty() || sorted.len() > n {
        return Err(Error::InvalidSize(format!("{what} size must be in 1..={n}, got {}", sorted.len())));
    }
    if let Some(&bad) = sorted.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidNode { node: bad, n });
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter(format!("{what} has repeated indices")));
    }
    Ok(())
}

/// The `k` lowest-frequency modes in the basis ordering.
pub fn select_band<T: Real>(basis: &BgftBasis<T>, k: usize) -> Result<BandSupport> {
    if k == 0 || k > basis.n() {
        return Err(Error::InvalidSize(format!("band size must be in 1..={}, got {k}", basis.n())));
    }
    BandSupport::new(basis.n(), basis.order[..k].to_vec())
}

/// `V_Ω`.
pub fn band_matrix<T: Real>(basis: &BgftBasis<T>, omega: &BandSupport) -> DenseMatrix<T> {
    basis.v().select_columns(omega.indices())
}

/// `x = V_Ω c` for explicit coefficients.
pub fn bandlimited<T: Real>(
    basis: &BgftBasis<T>,
    omega: &BandSupport,
    coeffs: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    if coeffs.len() != omega.len() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} coefficients", omega.len()),
            found: format!("{}", coeffs.len()),
        });
    }
    Ok(band_matrix(basis, omega).matvec(coeffs))
}

/// Coefficients with independent standard-normal real and imaginary parts.
pub fn gaussian_coefficients<T: Real, R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<Complex<T>> {
    (0..k)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect()
}

/// Real Gaussian noise of standard deviation `level`.
pub fn gaussian_noise<T: Real, R: Rng + ?Sized>(m: usize, level: T, rng: &mut R) -> Vec<Complex<T>> {
    (0..m)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            Complex::new(level * T::lit(z), T::zero())
        })
        .collect()
}

pub fn random_bandlimited_with<T: Real, R: Rng + ?Sized>(
    basis: &BgftBasis<T>,
    omega: &BandSupport,
    rng: &mut R,
) -> Vec<Complex<T>> {
    let c = gaussian_coefficients(omega.len(), rng);
    band_matrix(basis, omega).matvec(&c)
}

pub fn random_bandlimited<T: Real>(basis: &BgftBasis<T>, omega: &BandSupport, rng_seed: u64) -> Vec<Complex<T>> {
    random_bandlimited_with(basis, omega, &mut seeded_rng(rng_seed))
}

/// `P_M ∈ {0,1}^{m×n}`.
pub fn restriction<T: Real>(n: usize, m_set: &SamplingSet) -> DenseMatrix<T> {
    let mut pm = DenseMatrix::zeros(m_set.len(), n);
    for (r, &i) in m_set.nodes().iter().enumerate() {
        pm[(r, i)] = Complex::new(T::one(), T::zero());
    }
    pm
}

/// `B = P_M V_Ω`.
pub fn sampled_band_matrix<T: Real>(basis: &BgftBasis<T>, omega: &BandSupport, m_set: &SamplingSet) -> DenseMatrix<T> {
    basis.v().select_rows(m_set.nodes()).select_columns(omega.indices())
}

pub fn random_sampling_set_with<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<SamplingSet> {
    if m == 0 || m > n {
        return Err(Error::InvalidSize(format!("sample count must be in 1..={n}, got {m}")));
    }
    let nodes = rand::seq::index::sample(rng, n, m).into_vec();
    SamplingSet::new(n, nodes)
}

/// Uniform sample of `m` distinct nodes, sorted.
pub fn random_sampling_set(n: usize, m: usize, rng_seed: u64) -> Result<SamplingSet> {
    random_sampling_set_with(n, m, &mut seeded_rng(rng_seed))
}

/// Grows `M` one node at a time, each time adding the node that maximizes
/// the smallest singular value of `P_M V_Ω` (the smallest of the
/// `min(|M|, K)` values while `|M| < K`), then refines it by single swaps of
/// a chosen node for a free one while a swap raises that value.
///
/// The growth is restarted from every possible first node and the best
/// refined set is kept. Ties go to the lowest index.
pub fn greedy_sampling_set<T: Real>(basis: &BgftBasis<T>, omega: &BandSupport, m: usize) -> Result<SamplingSet> {
    let n = basis.n();
    if m == 0 || m > n {
        return Err(Error::InvalidSize(format!("sample count must be in 1..={n}, got {m}")));
    }
    let vo = band_matrix(basis, omega);
    let mut best: Option<(Vec<usize>, T)> = None;
    for first in 0..n {
        let (set, s) = grow_and_refine(&vo, first, m)?;
        if best.as_ref().is_none_or(|(_, b)| s > *b) {
            best = Some((set, s));
        }
    }
    SamplingSet::new(n, best.unwrap().0)
}

fn grow_and_refine<T: Real>(vo: &DenseMatrix<T>, first: usize, m: usize) -> Result<(Vec<usize>, T)> {
    let n = vo.rows();
    let score = |rows: &[usize]| -> Result<T> { Ok(*singular_values(&vo.select_rows(rows))?.last().unwrap()) };
    let mut chosen = vec![first];
    let mut free = vec![true; n];
    free[first] = false;
    while chosen.len() < m {
        let mut best: Option<(usize, T)> = None;
        for cand in (0..n).filter(|&i| free[i]) {
            chosen.push(cand);
            let smin = score(&chosen)?;
            chosen.pop();
            if best.is_none_or(|(_, b)| smin > b) {
                best = Some((cand, smin));
            }
        }
        let (pick, _) = best.unwrap();
        free[pick] = false;
        chosen.push(pick);
    }

    let gain = T::one() + T::tol(1e-12);
    let mut current = score(&chosen)?;
    for _ in 0..MAX_SWAP_PASSES {
        let mut improved = false;
        for slot in 0..m {
            for cand in 0..n {
                if !free[cand] {
                    continue;
                }
                let old = chosen[slot];
                chosen[slot] = cand;
                let s = score(&chosen)?;
                if s > current * gain {
                    free[old] = true;
                    free[cand] = false;
                    current = s;
                    improved = true;
                } else {
                    chosen[slot] = old;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok((chosen, current))
}

const MAX_SWAP_PASSES: usize = 32;

/// Least-squares recovery of a bandlimited signal from its samples.
#[derive(Debug, Clone)]
pub struct Reconstruction<T> {
    pub x_hat: Vec<Complex<T>>,
    pub coefficients: Vec<Complex<T>>,
    /// `σ_min(P_M V_Ω)` over all `K` columns (zero when `m < K`).
    pub sigma_min_b: T,
    pub sigma_max_b: T,
    pub cond_b: T,
    /// `‖V_Ω‖₂`.
    pub v_omega_norm: T,
    pub rank_deficient: bool,
}

/// Summary against a known ground truth.
#[derive(Debug, Clone)]
pub struct ReconstructionReport<T> {
    pub x_hat: Vec<Complex<T>>,
    pub rel_err: T,
    pub sigma_min_b: T,
    pub cond_b: T,
    /// `‖V_Ω‖₂ ‖η‖₂ / σ_min(P_M V_Ω)`; infinite when rank deficient.
    pub noise_bound: T,
    pub rank_deficient: bool,
}

/// `x̂ = V_Ω (P_M V_Ω)† y`.
pub fn reconstruct<T: Real>(
    basis: &BgftBasis<T>,
    omega: &BandSupport,
    m_set: &SamplingSet,
    y: &[Complex<T>],
) -> Result<Reconstruction<T>> {
    if y.len() != m_set.len() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} samples", m_set.len()),
            found: format!("{}", y.len()),
        });
    }
    let vo = band_matrix(basis, omega);
    let b = vo.select_rows(m_set.nodes());
    let sol = lstsq(&b, y)?;
    let x_hat = vo.matvec(&sol.solution);
    let (sigma_min_b, sigma_max_b) = band_extremes(&sol.singular_values, omega.len());
    let rank_deficient = sol.rank_deficient || sigma_min_b <= T::tol(LSTSQ_RANK_TOL) * sigma_max_b;
    let cond_b = if rank_deficient || sigma_min_b == T::zero() { T::infinity() } else { sigma_max_b / sigma_min_b };
    Ok(Reconstruction {
        x_hat,
        coefficients: sol.solution,
        sigma_min_b,
        sigma_max_b,
        cond_b,
        v_omega_norm: spectral_norm2(&vo)?,
        rank_deficient,
    })
}

/// `σ_min` over `K` columns: a wide `B` has `K − m` implicit zero values.
fn band_extremes<T: Real>(sv: &[T], k: usize) -> (T, T) {
    let smax = sv.first().copied().unwrap_or_else(T::zero);
    let smin = if sv.len() < k { T::zero() } else { sv.last().copied().unwrap_or_else(T::zero) };
    (smin, smax)
}

impl<T: Real> Reconstruction<T> {
    pub fn noise_bound(&self, eta_norm: T) -> T {
        if self.rank_deficient {
            T::infinity()
        } else {
            self.v_omega_norm * eta_norm / self.sigma_min_b
        }
    }

    pub fn report(&self, truth: &[Complex<T>], eta_norm: T) -> ReconstructionReport<T> {
        ReconstructionReport {
            x_hat: self.x_hat.clone(),
            rel_err: relative_error(&self.x_hat, truth),
            sigma_min_b: self.sigma_min_b,
            cond_b: self.cond_b,
            noise_bound: self.noise_bound(eta_norm),
            rank_deficient: self.rank_deficient,
        }
    }
}

/// `‖x̂ − x‖₂ / ‖x‖₂`; for `x = 0` it is 0 if `‖x̂‖ ≤ 1e-12`, else infinite.
pub fn relative_error<T: Real>(x_hat: &[Complex<T>], x: &[Complex<T>]) -> T {
    let diff: Vec<Complex<T>> = x_hat.iter().zip(x).map(|(&a, &b)| a - b).collect();
    let den = vec_norm(x);
    if den == T::zero() {
        return if vec_norm(x_hat) <= T::tol(1e-12) { T::zero() } else { T::infinity() };
    }
    vec_norm(&diff) / den
}

/// `‖V_Ω‖₂ · eta_norm / σ_min(P_M V_Ω)`.
pub fn noise_bound<T: Real>(basis: &BgftBasis<T>, omega: &BandSupport, m_set: &SamplingSet, eta_norm: T) -> Result<T> {
    let vo = band_matrix(basis, omega);
    let sv = singular_values(&vo.select_rows(m_set.nodes()))?;
    let (smin, smax) = band_extremes(&sv, omega.len());
    if smax == T::zero() || smin <= T::tol(LSTSQ_RANK_TOL) * smax {
        return Err(Error::RankDeficient { sigma_min: smin.to_f64_lossy(), sigma_max: smax.to_f64_lossy() });
    }
    Ok(spectral_norm2(&vo)? * eta_norm / smin)
}

/// One seeded sampling experiment: draw `x = V_Ω c`, sample `y = P_M x + η`
/// with real Gaussian `η` of the given level, and reconstruct.
///
/// Draw order from the single generator: coefficients (re, im per mode),
/// then the sample set, then the noise.
#[derive(Debug, Clone)]
pub struct Experiment<T> {
    pub omega: BandSupport,
    pub m_set: SamplingSet,
    pub x: Vec<Complex<T>>,
    pub eta: Vec<Complex<T>>,
    pub reconstruction: Reconstruction<T>,
    pub report: ReconstructionReport<T>,
}

pub fn run_experiment<T: Real>(basis: &BgftBasis<T>, k: usize, m: usize, noise: T, seed: u64) -> Result<Experiment<T>> {
    if !(noise.is_finite() && noise >= T::zero()) {
        return Err(Error::InvalidParameter(format!("noise level must be >= 0, got {noise}")));
    }
    let mut rng = seeded_rng(seed);
    let omega = select_band(basis, k)?;
    let x = random_bandlimited_with(basis, &omega, &mut rng);
    let m_set = random_sampling_set_with(basis.n(), m, &mut rng)?;
    let eta = if noise > T::zero() {
        gaussian_noise(m, noise, &mut rng)
    } else {
        vec![Complex::new(T::zero(), T::zero()); m]
    };
    let y: Vec<Complex<T>> = m_set.sample(&x).iter().zip(&eta).map(|(&a, &b)| a + b).collect();
    let reconstruction = reconstruct(basis, &omega, &m_set, &y)?;
    let report = reconstruction.report(&x, vec_norm(&eta));
    Ok(Experiment { omega, m_set, x, eta, reconstruction, report })
}
