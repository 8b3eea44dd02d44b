//! Random states and operators shared by the integration tests.
#![allow(dead_code)]

use qdotto_core::{kron, Complex64, ComplexMatrix};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_ket<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_pure<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ComplexMatrix::outer(&random_ket(rng, dim))
}

/// Full-rank mixed state `G·G† / Tr(G·G†)`.
pub fn random_mixed<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    m.scale(c(1.0 / tr, 0.0)).hermitian_part()
}

/// Haar-agnostic random SU(2) element from three angles.
pub fn random_unitary_2<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let b: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (s, co) = theta.sin_cos();
    ComplexMatrix::from_row_major(
        2,
        2,
        vec![
            Complex64::from_polar(co, a),
            Complex64::from_polar(s, b),
            -Complex64::from_polar(s, -b),
            Complex64::from_polar(co, -a),
        ],
    )
}

pub fn random_local_unitary<R: Rng>(rng: &mut R, n_qubits: usize) -> ComplexMatrix {
    let mut u = random_unitary_2(rng);
    for _ in 1..n_qubits {
        u = kron(&u, &random_unitary_2(rng));
    }
    u
}

/// Product of independent single-qubit mixed states.
pub fn random_product<R: Rng>(rng: &mut R, n_qubits: usize) -> ComplexMatrix {
    let mut rho = random_mixed(rng, 2);
    for _ in 1..n_qubits {
        rho = kron(&rho, &random_mixed(rng, 2));
    }
    rho
}

pub fn ket(amplitudes: &[(usize, f64)], dim: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); dim];
    for &(i, a) in amplitudes {
        v[i] = c(a, 0.0);
    }
    v
}
