mod common;

use bgft::bgft::decompose;
use bgft::digraph::{add_directed_chord, directed_cycle, perturbed_cycle};
use bgft::linalg::{cond2, eig_general, inverse, lstsq, singular_values, svd, DenseMatrix};
use bgft::markov::{departure_from_normality, stationary, symmetrize, transition};
use bgft::sampling::seeded_rng;
use bgft::{Matrix, C64};
use common::*;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;

fn random_complex(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = seeded_rng(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn random_real(n: usize, seed: u64) -> Matrix {
    let mut rng = seeded_rng(seed);
    DenseMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), 0.0))
}

fn to_na(m: &Matrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

#[test]
fn singular_values_match_gram_eigenvalues() {
    for (rows, cols, seed) in [(5, 3, 1), (8, 8, 2), (3, 7, 3), (12, 4, 4)] {
        let m = random_complex(rows, cols, seed);
        let na = to_na(&m);
        let gram = if rows >= cols { na.adjoint() * &na } else { &na * na.adjoint() };
        let expect = sorted_desc(SymmetricEigen::new(gram).eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect());
        let got = singular_values(&m).unwrap();
        assert_eq!(got.len(), rows.min(cols));
        for (a, b) in got.iter().zip(&expect) {
            assert!((a - b).abs() <= 1e-10 * expect[0], "{rows}x{cols}: {a} vs {b}");
        }
    }
}

#[test]
fn svd_of_adjoint_has_same_spectrum_and_reconstructs() {
    let m = random_complex(6, 4, 11);
    let a = singular_values(&m).unwrap();
    let b = singular_values(&m.adjoint()).unwrap();
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12));

    let s = svd(&m).unwrap();
    let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
    let sigma = DenseMatrix::from_diagonal(&s.singular_values.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>());
    let back = u.matmul(&sigma).matmul(&v.adjoint());
    assert!((&back - &m).frobenius_norm() < 1e-12 * m.frobenius_norm());
    let uu = u.adjoint().matmul(u);
    assert!((&uu - &DenseMatrix::identity(uu.rows())).frobenius_norm() < 1e-12);
}

#[test]
fn eigenvalues_match_nalgebra_schur() {
    for seed in 0..6u64 {
        let n = 4 + seed as usize;
        let m = random_real(n, 100 + seed);
        let real = DMatrix::from_fn(n, n, |i, j| m[(i, j)].re);
        let reference: Vec<C64> = real.complex_eigenvalues().iter().copied().collect();
        let e = eig_general(&m).unwrap();
        let map = match_eigenvalues(&reference, &e.eigenvalues);
        for (r, &k) in reference.iter().zip(&map) {
            assert!((r - e.eigenvalues[k]).norm() < 1e-9, "n = {n}: {r} vs {}", e.eigenvalues[k]);
        }
        assert!(e.residual < 1e-10 * m.frobenius_norm());
        let dual = e.left_dual.matmul(&e.right_vectors);
        assert!((&dual - &DenseMatrix::identity(n)).frobenius_norm() < 1e-9);
    }
}

#[test]
fn eigen_decomposition_is_deterministic() {
    let m = random_complex(9, 9, 5);
    let a = eig_general(&m).unwrap();
    let b = eig_general(&m).unwrap();
    assert_eq!(a.eigenvalues, b.eigenvalues);
    assert_eq!(a.right_vectors.as_slice(), b.right_vectors.as_slice());
    assert_eq!(a.left_dual.as_slice(), b.left_dual.as_slice());
}

#[test]
fn symmetric_matrices_have_orthonormal_eigenvectors() {
    for seed in 0..5u64 {
        let r = random_real(7, 200 + seed);
        let s = &r + &r.transpose();
        let e = eig_general(&s).unwrap();
        assert!(e.cond_v <= 1.0 + 1e-6, "cond {}", e.cond_v);
        assert!(e.eigenvalues.iter().all(|l| l.im.abs() < 1e-12));
    }
}

#[test]
fn inverse_matches_nalgebra_and_has_small_residual() {
    let m = &random_complex(6, 6, 21) + &DenseMatrix::identity(6).scale(C64::new(3.0, 0.0));
    let inv = inverse(&m).unwrap();
    let res = (&m.matmul(&inv) - &DenseMatrix::identity(6)).frobenius_norm();
    assert!(res < 1e-12, "residual {res}");
    let na = to_na(&m).try_inverse().unwrap();
    for i in 0..6 {
        for j in 0..6 {
            assert!((na[(i, j)] - inv[(i, j)]).norm() < 1e-12);
        }
    }
}

#[test]
fn lstsq_matches_normal_equations() {
    let b = random_complex(8, 3, 31);
    let mut rng = seeded_rng(32);
    let y: Vec<C64> = (0..8).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let sol = lstsq(&b, &y).unwrap();
    assert!(!sol.rank_deficient);
    assert_eq!(sol.rank, 3);
    let nb = to_na(&b);
    let rhs = nb.adjoint() * DVector::from_vec(y.clone());
    let c = (nb.adjoint() * &nb).lu().solve(&rhs).unwrap();
    for (a, e) in sol.solution.iter().zip(c.iter()) {
        assert!((a - e).norm() < 1e-8, "{a} vs {e}");
    }
}

#[test]
fn cond_of_well_and_ill_conditioned() {
    assert!((cond2(&DenseMatrix::<f64>::identity(5)).unwrap() - 1.0).abs() < 1e-14);
    let d = DenseMatrix::from_diagonal(&[C64::new(1.0, 0.0), C64::new(1e-3, 0.0)]);
    assert!((cond2(&d).unwrap() - 1e3).abs() < 1e-9);
    let singular = Matrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
    assert!(cond2(&singular).unwrap().is_infinite());
}

#[test]
fn stationary_matches_power_iteration() {
    let g = add_directed_chord(&directed_cycle::<f64>(4).unwrap(), 1.0, 0, 2).unwrap();
    let op = transition(&g).unwrap();
    let pi = stationary(&op).unwrap();
    let mut q = vec![0.25; 4];
    for _ in 0..10_000 {
        q = (0..4).map(|j| (0..4).map(|i| q[i] * op.p[(i, j)].re).sum()).collect();
    }
    for (a, b) in pi.pi.iter().zip(&q) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
    for seed in 0..4 {
        let op = transition(&random_digraph(10, 0.3, 300 + seed)).unwrap();
        let pi = stationary(&op).unwrap();
        let mut q = vec![0.1; 10];
        for _ in 0..10_000 {
            q = (0..10).map(|j| (0..10).map(|i| q[i] * op.p[(i, j)].re).sum()).collect();
        }
        assert!(pi.pi.iter().zip(&q).all(|(a, b)| (a - b).abs() < 1e-10));
    }
}

#[test]
fn reversible_spectrum_matches_symmetrized_matrix() {
    for seed in 0..4u64 {
        let g = random_symmetric(7, 400 + seed);
        let op = transition(&g).unwrap();
        let pi = stationary(&op).unwrap();
        let total: f64 = g.weights().iter().sum();
        for (i, &p) in pi.pi.iter().enumerate() {
            let d: f64 = (0..7).map(|j| g.weight(i, j)).sum();
            assert!((p - d / total).abs() < 1e-12);
        }
        let s = symmetrize(&op, &pi);
        let sym = DMatrix::from_fn(7, 7, |i, j| 0.5 * (s[(i, j)].re + s[(j, i)].re));
        let reference = sorted_desc(SymmetricEigen::new(sym).eigenvalues.iter().copied().collect());
        let b = decompose(&op).unwrap();
        let ours = sorted_desc(b.eigenvalues().iter().map(|l| l.re).collect());
        for (a, r) in ours.iter().zip(&reference) {
            assert!((a - r).abs() < 1e-10);
        }
    }
}

#[test]
fn departure_of_jordan_like_block() {
    let m = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
    assert!((departure_from_normality(&m) - 2f64.sqrt() / 3.0).abs() < 1e-15);
}

#[test]
fn single_precision_pipeline() {
    let g = perturbed_cycle::<f32>(16, 3.0).unwrap();
    let b = decompose(&transition(&g).unwrap()).unwrap();
    let x: Vec<bgft::C32> = (0..16).map(|i| bgft::C32::new((i as f32).sin(), 0.5)).collect();
    let back = b.synthesize(&b.analyze(&x).unwrap()).unwrap();
    let err: f32 = back.iter().zip(&x).map(|(a, b)| (a - b).norm_sqr()).sum::<f32>().sqrt();
    assert!(err < 1e-4, "f32 round trip {err}");
    let b64 = decompose(&transition(&perturbed_cycle::<f64>(16, 3.0).unwrap()).unwrap()).unwrap();
    assert!(((b.cond_v() as f64) - b64.cond_v()).abs() < 1e-3 * b64.cond_v());
}
