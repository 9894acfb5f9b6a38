//! Seeded random matrices and states for tests, audits and invariance checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;
use crate::state::PureState;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for j in (i + 1)..dim {
            let z = gaussian(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Haar-random unitary via Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    let mut m = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    m
}

/// Full-rank density matrix `G G† / Tr(G G†)` from a Ginibre matrix `G`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ComplexMatrix::from_vec(dim, (0..dim * dim).map(|_| gaussian(rng)).collect());
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

/// Haar-random pure state on `n` qubits.
pub fn random_pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PureState {
    let amps: Vec<Complex64> = (0..1usize << n).map(|_| gaussian(rng)).collect();
    PureState::normalized(n, amps).expect("Gaussian vector is nonzero")
}

/// Product of `n` independent random single-qubit states.
pub fn random_product_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PureState {
    let mut state = random_pure_state(1, rng);
    for _ in 1..n {
        state = state.tensor(&random_pure_state(1, rng));
    }
    state
}

/// Applies an independent Haar-random single-qubit unitary to every qubit.
pub fn apply_random_local_unitaries<R: Rng + ?Sized>(state: &PureState, rng: &mut R) -> PureState {
    let mut out = state.clone();
    for q in 0..state.n_qubits() {
        let u = random_unitary(2, rng);
        out = out.apply_single_qubit(q, &u);
    }
    out
}
