use bgft::bgft::{decompose, FilterSpec};
use bgft::digraph::DirectedGraph;
use bgft::linalg::{singular_values, vec_norm, vec_sub, DenseMatrix};
use bgft::markov::{
    asymmetry_index, departure_from_normality, pi_inner, stationary, transition, StationaryDistribution,
};
use bgft::sampling::{bandlimited, reconstruct, sampled_band_matrix, select_band, SamplingSet};
use bgft::{Graph, C64};
use proptest::prelude::*;

/// Weighted directed cycle plus arbitrary extra edges.
fn digraph() -> impl Strategy<Value = Graph> {
    (3usize..10).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(0.5f64..1.5, n),
            prop::collection::vec(prop::option::weighted(0.25, 0.1f64..2.0), n * n),
        )
            .prop_map(|(n, ring, extra)| {
                let mut w = vec![0.0; n * n];
                for i in 0..n {
                    w[i * n + (i + 1) % n] += ring[i];
                    for j in 0..n {
                        if i != j {
                            w[i * n + j] += extra[i * n + j].unwrap_or(0.0);
                        }
                    }
                }
                DirectedGraph::from_weights(n, w).unwrap()
            })
    })
}

fn signal(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b)), n)
}

fn graph_and_signal() -> impl Strategy<Value = (Graph, Vec<C64>)> {
    digraph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), signal(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transition_rows_are_stochastic(g in digraph()) {
        let p = transition(&g).unwrap().p;
        for i in 0..g.n() {
            let s: f64 = p.row(i).iter().map(|z| z.re).sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
            prop_assert!(p.row(i).iter().all(|z| z.re >= 0.0 && z.im == 0.0));
        }
        let a = asymmetry_index(&p);
        prop_assert!((0.0..=2f64.sqrt() + 1e-12).contains(&a));
        prop_assert!(departure_from_normality(&p) >= 0.0);
    }

    #[test]
    fn analysis_inverts_synthesis((g, x) in graph_and_signal()) {
        let b = decompose(&transition(&g).unwrap()).unwrap();
        prop_assert!(b.identity_residual() < 1e-9);
        let back = b.synthesize(&b.analyze(&x).unwrap()).unwrap();
        prop_assert!(vec_norm(&vec_sub(&back, &x)) <= 1e-8 * vec_norm(&x));
        prop_assert!(b.eigenvalues().iter().all(|l| l.norm() <= 1.0 + 1e-9));
        prop_assert!((b.eigenvalues()[b.order[0]] - C64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn stationary_is_a_fixed_probability_vector(g in digraph()) {
        let op = transition(&g).unwrap();
        let pi = stationary(&op).unwrap();
        prop_assert!(pi.pi.iter().all(|&p| p > 0.0));
        prop_assert!((pi.pi.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(pi.balance_residual(&op) < 1e-10);
    }

    #[test]
    fn heat_filters_compose((g, x) in graph_and_signal(), t1 in 0.1f64..4.0, t2 in 0.1f64..4.0) {
        let b = decompose(&transition(&g).unwrap()).unwrap();
        let id = b.apply_filter(&FilterSpec::heat(0.0), &x).unwrap();
        prop_assert!(vec_norm(&vec_sub(&id, &x)) <= 1e-8 * vec_norm(&x));
        let two = b.apply_filter(&FilterSpec::heat(t2), &b.apply_filter(&FilterSpec::heat(t1), &x).unwrap()).unwrap();
        let one = b.apply_filter(&FilterSpec::heat(t1 + t2), &x).unwrap();
        prop_assert!(vec_norm(&vec_sub(&one, &two)) <= 1e-8 * b.cond_v() * vec_norm(&x));
    }

    #[test]
    fn pi_inner_matches_direct_sum(x in signal(6), y in signal(6), w in prop::collection::vec(0.01f64..1.0, 6)) {
        let total: f64 = w.iter().sum();
        let pi = StationaryDistribution::new(w.iter().map(|v| v / total).collect()).unwrap();
        let direct: C64 = (0..6).map(|i| x[i].conj() * y[i] * pi.pi[i]).sum();
        prop_assert!((pi_inner(&x, &y, &pi) - direct).norm() < 1e-14);
    }

    #[test]
    fn sampling_picks_entries(x in signal(9), nodes in prop::sample::subsequence((0..9).collect::<Vec<_>>(), 1..9)) {
        let m = SamplingSet::new(9, nodes.clone()).unwrap();
        let y = m.sample(&x);
        for (r, &i) in nodes.iter().enumerate() {
            prop_assert_eq!(y[r], x[i]);
        }
    }

    #[test]
    fn more_samples_never_lower_sigma_min(g in digraph(), seed in any::<u64>()) {
        let b = decompose(&transition(&g).unwrap()).unwrap();
        let n = b.n();
        let omega = select_band(&b, 2.min(n)).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left((seed % n as u64) as usize);
        let mut prev = 0.0;
        for m in 1..=n {
            let sv = singular_values(&sampled_band_matrix(&b, &omega, &SamplingSet::new(n, order[..m].to_vec()).unwrap())).unwrap();
            let s = if sv.len() < omega.len() { 0.0 } else { *sv.last().unwrap() };
            prop_assert!(s >= prev - 1e-12);
            prev = s;
        }
    }

    #[test]
    fn sampling_every_node_recovers_exactly(g in digraph(), c in signal(2)) {
        let b = decompose(&transition(&g).unwrap()).unwrap();
        let omega = select_band(&b, 2).unwrap();
        let x = bandlimited(&b, &omega, &c).unwrap();
        let m = SamplingSet::all(b.n());
        let rec = reconstruct(&b, &omega, &m, &m.sample(&x)).unwrap();
        prop_assert!(rec.report(&x, 0.0).rel_err <= 1e-8);
    }

    #[test]
    fn matrix_products_associate(a in signal(9), b in signal(9), c in signal(9)) {
        let (a, b, c) = (DenseMatrix::new(3, 3, a).unwrap(), DenseMatrix::new(3, 3, b).unwrap(), DenseMatrix::new(3, 3, c).unwrap());
        let lhs = a.matmul(&b).matmul(&c);
        let rhs = a.matmul(&b.matmul(&c));
        prop_assert!((&lhs - &rhs).frobenius_norm() < 1e-12);
        prop_assert!((&a.matmul(&b).adjoint() - &b.adjoint().matmul(&a.adjoint())).frobenius_norm() < 1e-12);
    }
}
