#![allow(dead_code)]

use cpt_core::{Complex64, ComplexMatrix64, ComplexVector64, PtFrame64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix64 {
    ComplexMatrix64::from_fn(n, n, |_, _| random_complex(rng))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> ComplexVector64 {
    ComplexVector64::from_fn(n, |_, _| random_complex(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix64 {
    let a = random_matrix(rng, n);
    (&a + a.adjoint()) * c(0.5, 0.0)
}

/// `A + P·conj(A)·P`, PT-symmetric for `T` = conjugation and real `P`.
pub fn random_pt_symmetric(rng: &mut impl Rng, frame: &PtFrame64) -> ComplexMatrix64 {
    let a = random_matrix(rng, frame.dim());
    let p = frame.p().matrix();
    &a + p * a.map(|z| z.conj()) * p
}

pub fn dimer(r: f64, s: f64, theta: f64) -> ComplexMatrix64 {
    ComplexMatrix64::from_row_slice(
        2,
        2,
        &[Complex64::from_polar(r, theta), c(s, 0.0), c(s, 0.0), Complex64::from_polar(r, -theta)],
    )
}

/// `(r, s, θ)` with `|(r/s)·sinθ| ≤ 1 − margin`, all nonzero.
pub fn random_unbroken_params(rng: &mut impl Rng, margin: f64) -> (f64, f64, f64) {
    loop {
        let r = rng.random_range(0.1..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let s = rng.random_range(0.1..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let theta = rng.random_range(-3.1..3.1);
        if theta != 0.0 && (r / s * f64::sin(theta)).abs() <= 1.0 - margin {
            return (r, s, theta);
        }
    }
}

/// `(r, s, θ)` with `|(r/s)·sinθ| ≥ 1 + margin`.
pub fn random_broken_params(rng: &mut impl Rng, margin: f64) -> (f64, f64, f64) {
    loop {
        let r = rng.random_range(0.1..3.0);
        let s = rng.random_range(0.1..3.0);
        let theta = rng.random_range(-3.1..3.1);
        if (r / s * f64::sin(theta)).abs() >= 1.0 + margin {
            return (r, s, theta);
        }
    }
}

/// Largest distance in an optimal-by-greed pairing of two multisets.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets differ in size");
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

/// Roots of `λ² − tr·λ + det` for a 2×2 matrix.
pub fn quadratic_eigenvalues(m: &ComplexMatrix64) -> [Complex64; 2] {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * 4.0).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}
