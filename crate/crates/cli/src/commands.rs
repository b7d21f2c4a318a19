use anyhow::{bail, Result};
use bgft::bgft::{decompose, FilterSpec};
use bgft::linalg::{vec_norm, vec_sub};
use bgft::markov::{
    asymmetry_index, departure_from_normality, is_reversible, stationary, transition, REVERSIBILITY_TOL,
};
use bgft::sampling::{
    gaussian_noise, greedy_sampling_set, random_bandlimited_with, reconstruct as recover, run_experiment, seeded_rng,
    select_band,
};
use bgft::{Basis, C64};

use crate::config::{ExperimentConfig, GraphKind};
use crate::record::Record;

fn basis(cfg: &ExperimentConfig) -> Result<(bgft::Transition, Basis)> {
    let op = transition(&cfg.build_graph()?)?;
    let b = decompose(&op)?;
    Ok((op, b))
}

fn check_len(x: &[C64], n: usize) -> Result<()> {
    if x.len() != n {
        bail!("signal has {} entries but the graph has {n} nodes", x.len());
    }
    Ok(())
}

pub fn indices(cfg: &ExperimentConfig) -> Result<Record> {
    let (op, b) = basis(cfg)?;
    let pi = stationary(&op)?;
    let top: Vec<C64> = b.order.iter().take(cfg.k.min(b.n())).map(|&i| b.eigenvalues()[i]).collect();
    Ok(Record::new()
        .with("graph", cfg.label())
        .with("n", b.n())
        .with("alpha", asymmetry_index(&op.p))
        .with("delta", departure_from_normality(&op.p))
        .with("cond_v", b.cond_v())
        .with("spectral_radius", b.spectral_radius())
        .with("reversible", is_reversible(&op, &pi, REVERSIBILITY_TOL))
        .with("eigenvalues", top))
}

/// `H x` with a one-line norm summary.
pub fn filter(cfg: &ExperimentConfig, x: &[C64]) -> Result<(Vec<C64>, String)> {
    let (_, b) = basis(cfg)?;
    check_len(x, b.n())?;
    let spec = FilterSpec::heat(cfg.tau);
    let y = b.apply_filter(&spec, x)?;
    let log = format!("tau = {}  ||x||_2 = {:e}  ||Hx||_2 = {:e}", cfg.tau, vec_norm(x), vec_norm(&y));
    Ok((y, log))
}

pub fn diffuse(cfg: &ExperimentConfig, x0: &[C64], t: u32) -> Result<Vec<Record>> {
    let (op, b) = basis(cfg)?;
    check_len(x0, b.n())?;
    let scale = vec_norm(x0);
    let mut x = x0.to_vec();
    let mut rows = Vec::with_capacity(t as usize + 1);
    for s in 0..=t {
        if s > 0 {
            x = op.p.matvec(&x);
        }
        let norm = vec_norm(&x);
        let bound = b.iterate_bound(s) * scale;
        if norm > bound + 1e-8 * scale.max(1.0) {
            bail!("iterate bound violated at s = {s}: ||x_s|| = {norm:e} > {bound:e}");
        }
        rows.push(Record::new().with("s", s as usize).with("norm", norm).with("bound", bound));
    }
    Ok(rows)
}

pub fn reconstruct(cfg: &ExperimentConfig, greedy: bool) -> Result<Record> {
    let (_, b) = basis(cfg)?;
    let n = b.n();
    if !(1 <= cfg.k && cfg.k <= cfg.m && cfg.m <= n) {
        bail!("need 1 <= k <= m <= n, got k = {}, m = {}, n = {n}", cfg.k, cfg.m);
    }
    let (m_set, x, eta, rec) = if greedy {
        let mut rng = seeded_rng(cfg.seed);
        let omega = select_band(&b, cfg.k)?;
        let x = random_bandlimited_with(&b, &omega, &mut rng);
        let m_set = greedy_sampling_set(&b, &omega, cfg.m)?;
        let eta =
            if cfg.noise > 0.0 { gaussian_noise(cfg.m, cfg.noise, &mut rng) } else { vec![C64::new(0.0, 0.0); cfg.m] };
        let y: Vec<C64> = m_set.sample(&x).iter().zip(&eta).map(|(a, e)| a + e).collect();
        let rec = recover(&b, &omega, &m_set, &y)?;
        (m_set, x, eta, rec)
    } else {
        let e = run_experiment(&b, cfg.k, cfg.m, cfg.noise, cfg.seed)?;
        (e.m_set, e.x, e.eta, e.reconstruction)
    };
    let eta_norm = vec_norm(&eta);
    let report = rec.report(&x, eta_norm);
    Ok(Record::new()
        .with("graph", cfg.label())
        .with("n", n)
        .with("k", cfg.k)
        .with("m", cfg.m)
        .with("noise", cfg.noise)
        .with("seed", cfg.seed)
        .with("sampling", if greedy { "greedy" } else { "random" })
        .with("sigma_min_b", report.sigma_min_b)
        .with("cond_b", report.cond_b)
        .with("rel_err", report.rel_err)
        .with("error_norm", vec_norm(&vec_sub(&rec.x_hat, &x)))
        .with("noise_norm", eta_norm)
        .with("noise_bound", report.noise_bound)
        .with("rank_deficient", report.rank_deficient)
        .with("samples", m_set.nodes().to_vec()))
}

pub fn table1(cfg: &ExperimentConfig) -> Result<Vec<Record>> {
    let kinds = [GraphKind::UndirectedCycle, GraphKind::DirectedCycle, GraphKind::PerturbedCycle];
    kinds
        .iter()
        .map(|&kind| {
            let c = cfg.with_graph(kind);
            let (op, b) = basis(&c)?;
            let e = run_experiment(&b, c.k, c.m, c.noise, c.seed)?;
            Ok(Record::new()
                .with("graph", c.label())
                .with("alpha", asymmetry_index(&op.p))
                .with("delta", departure_from_normality(&op.p))
                .with("cond_v", b.cond_v())
                .with("cond_b", e.report.cond_b)
                .with("rel_err", e.report.rel_err))
        })
        .collect()
}
