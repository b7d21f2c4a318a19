mod common;

use bgft::bgft::decompose;
use bgft::digraph::perturbed_cycle;
use bgft::linalg::{singular_values, vec_norm};
use bgft::markov::transition;
use bgft::sampling::{
    greedy_sampling_set, random_bandlimited, random_sampling_set, reconstruct, run_experiment, sampled_band_matrix,
    select_band, SamplingSet,
};
use bgft::{Basis, C64};
use common::*;

fn sigma_min(b: &Basis, omega: &bgft::sampling::BandSupport, m: &SamplingSet) -> f64 {
    let sv = singular_values(&sampled_band_matrix(b, omega, m)).unwrap();
    if sv.len() < omega.len() {
        0.0
    } else {
        *sv.last().unwrap()
    }
}

#[test]
fn greedy_competes_with_random_search() {
    let trials = 40u64;
    let mut wins = 0;
    for t in 0..trials {
        let n = 6 + (t % 5) as usize;
        let b = decompose(&transition(&random_digraph(n, 0.3, 5_000 + t)).unwrap()).unwrap();
        let k = 2 + (t % 3) as usize;
        let omega = select_band(&b, k).unwrap();
        let greedy = sigma_min(&b, &omega, &greedy_sampling_set(&b, &omega, k).unwrap());
        let best = (0..1000u64)
            .map(|s| sigma_min(&b, &omega, &random_sampling_set(n, k, 10_000 * t + s).unwrap()))
            .fold(0.0, f64::max);
        if greedy >= best * (1.0 - 1e-12) {
            wins += 1;
        }
    }
    assert!(wins as f64 >= 0.9 * trials as f64, "greedy matched random search in {wins}/{trials} trials");
}

#[test]
fn adding_samples_never_lowers_sigma_min() {
    let b = decompose(&transition(&random_digraph(16, 0.2, 77)).unwrap()).unwrap();
    let omega = select_band(&b, 5).unwrap();
    for seed in 0..10 {
        let order = random_sampling_set(16, 16, seed).unwrap();
        let mut perm: Vec<usize> = order.nodes().to_vec();
        perm.rotate_left(seed as usize);
        let mut prev = 0.0;
        for m in 1..=16 {
            let s = sigma_min(&b, &omega, &SamplingSet::new(16, perm[..m].to_vec()).unwrap());
            assert!(s >= prev - 1e-12, "m = {m}: {s} < {prev}");
            prev = s;
        }
    }
}

#[test]
fn full_rank_recovery_is_exact_and_in_band() {
    for (gi, (_, g)) in theorem_graphs().iter().enumerate() {
        let b = decompose(&transition(g).unwrap()).unwrap();
        let k = 3.min(b.n());
        let omega = select_band(&b, k).unwrap();
        let x = random_bandlimited(&b, &omega, gi as u64);
        let m = (0..100)
            .map(|s| random_sampling_set(b.n(), b.n() / 2, s).unwrap())
            .find(|m| sigma_min(&b, &omega, m) > 1e-6)
            .unwrap();
        let rec = reconstruct(&b, &omega, &m, &m.sample(&x)).unwrap();
        let report = rec.report(&x, 0.0);
        assert!(report.rel_err <= 1e-6, "graph {gi}: {}", report.rel_err);
        let coeff = b.analyze(&rec.x_hat).unwrap();
        let outside: Vec<C64> = (0..b.n()).filter(|k| !omega.contains(*k)).map(|k| coeff[k]).collect();
        assert!(vec_norm(&outside) <= 1e-8 * vec_norm(&rec.x_hat));
    }
}

#[test]
fn paper_configuration_reconstructs_noiselessly() {
    let b = decompose(&transition(&perturbed_cycle::<f64>(64, 20.0).unwrap()).unwrap()).unwrap();
    let exp = run_experiment(&b, 8, 20, 0.0, 0).unwrap();
    assert!(exp.report.rel_err <= 1e-4);
    let noisy = run_experiment(&b, 8, 20, 1e-3, 0).unwrap();
    let err = vec_norm(&bgft::linalg::vec_sub(&noisy.reconstruction.x_hat, &noisy.x));
    assert!(err <= noisy.report.noise_bound + 1e-8);
    let again = run_experiment(&b, 8, 20, 1e-3, 0).unwrap();
    assert_eq!(again.report.x_hat, noisy.report.x_hat);
}

#[test]
fn zero_signal_and_wide_systems() {
    let b = decompose(&transition(&perturbed_cycle::<f64>(12, 3.0).unwrap()).unwrap()).unwrap();
    let omega = select_band(&b, 4).unwrap();
    let m = SamplingSet::new(12, vec![0, 5, 9]).unwrap();
    let zeros = vec![C64::new(0.0, 0.0); 3];
    let rec = reconstruct(&b, &omega, &m, &zeros).unwrap();
    assert!(rec.rank_deficient);
    assert_eq!(rec.report(&[C64::new(0.0, 0.0); 12], 0.0).rel_err, 0.0);
    assert!(bgft::sampling::noise_bound(&b, &omega, &m, 1.0).is_err());
}
