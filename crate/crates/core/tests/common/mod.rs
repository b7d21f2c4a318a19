#![allow(dead_code)]

use bgft::digraph::{self, DirectedGraph};
use bgft::sampling::seeded_rng;
use bgft::{Graph, C64};
use rand::Rng;
use serde::Deserialize;

pub type Pair = [f64; 2];

pub fn c(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

pub fn cvec(v: &[Pair]) -> Vec<C64> {
    v.iter().map(c).collect()
}

pub fn cmat(m: &[Vec<Pair>]) -> Vec<Vec<C64>> {
    m.iter().map(|r| cvec(r)).collect()
}

#[derive(Debug, Deserialize)]
pub struct SmallCase {
    pub name: String,
    pub n: usize,
    pub adjacency: Vec<Vec<f64>>,
    pub tau: f64,
    pub eigenvalues: Vec<Pair>,
    pub right_vectors: Vec<Vec<Pair>>,
    pub left_dual: Vec<Vec<Pair>>,
    pub signal: Vec<Pair>,
    pub coefficients: Vec<Pair>,
    pub filter: Vec<Vec<Pair>>,
    pub band_eigenvalues: Vec<Pair>,
    pub samples: Vec<usize>,
    pub band_signal: Vec<Pair>,
    pub noise: Vec<f64>,
    pub reconstruction: Vec<Pair>,
    pub rel_err: f64,
    pub cond_b: f64,
}

#[derive(Debug, Deserialize)]
pub struct LargeCase {
    pub n: usize,
    pub eps: f64,
    pub tau: f64,
    pub filter: Vec<Vec<Pair>>,
    pub signal: Vec<Pair>,
    pub filtered: Vec<Pair>,
    pub band8_eigenvalues: Vec<Pair>,
    pub cond_v: f64,
}

#[derive(Debug, Deserialize)]
pub struct Fixture {
    pub small: Vec<SmallCase>,
    pub perturbed64: LargeCase,
}

pub fn fixture() -> Fixture {
    let text = include_str!("../fixtures/reference.json");
    serde_json::from_str(text).expect("reference fixture parses")
}

/// Directed cycle with weights in [0.5, 1.5] plus extra edges of density `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = seeded_rng(seed);
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        w[i * n + (i + 1) % n] = rng.random_range(0.5..1.5);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random::<f64>() < p {
                w[i * n + j] += rng.random_range(0.1..2.0);
            }
        }
    }
    DirectedGraph::from_weights(n, w).unwrap()
}

/// Symmetric positive weights on the complete graph without loops.
pub fn random_symmetric(n: usize, seed: u64) -> Graph {
    let mut rng = seeded_rng(seed);
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let x = rng.random_range(0.1..1.0);
            w[i * n + j] = x;
            w[j * n + i] = x;
        }
    }
    DirectedGraph::from_weights(n, w).unwrap()
}

pub fn random_signal(n: usize, seed: u64) -> Vec<C64> {
    let mut rng = seeded_rng(seed);
    (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

/// The reference test signal `sin(1.3 i + 0.2) + i cos(0.7 i)`.
pub fn test_signal(n: usize) -> Vec<C64> {
    (0..n)
        .map(|i| {
            let t = i as f64;
            C64::new((1.3 * t + 0.2).sin(), (0.7 * t).cos())
        })
        .collect()
}

pub fn canonical(n: usize, eps: f64) -> Vec<(String, Graph)> {
    vec![
        ("undirected cycle".into(), digraph::undirected_cycle(n).unwrap()),
        ("directed cycle".into(), digraph::directed_cycle(n).unwrap()),
        ("perturbed cycle".into(), digraph::perturbed_cycle(n, eps).unwrap()),
    ]
}

/// The 20 random digraphs plus the three canonical graphs at n = 64.
pub fn theorem_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for g in 0..20u64 {
        let n = [8, 16, 32][(g % 3) as usize];
        out.push((format!("random#{g} (n={n})"), random_digraph(n, 0.2, 1000 + g)));
    }
    out.extend(canonical(64, 20.0));
    out
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// For each reference eigenvalue, the index of the nearest unused one in `ours`.
pub fn match_eigenvalues(reference: &[C64], ours: &[C64]) -> Vec<usize> {
    let mut used = vec![false; ours.len()];
    reference
        .iter()
        .map(|r| {
            let (k, _) = ours
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, l)| (k, (l - r).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            used[k] = true;
            k
        })
        .collect()
}
