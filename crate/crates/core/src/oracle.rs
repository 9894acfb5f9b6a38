//! Slow, independent reference computations used to cross-check the fast
//! closed-form paths.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::psd_sqrt;
use crate::state::{DensityOperator, PureState};

/// `(Tr √(√ρ σ √ρ))²`.
pub fn uhlmann_fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimMismatch(rho.dim(), sigma.dim()));
    }
    let s = psd_sqrt(rho.matrix())?;
    let inner = &(&s * sigma.matrix()) * &s;
    // symmetrize away round-off before the second root
    let inner = (&inner + &inner.adjoint()).scale_real(0.5);
    let root = psd_sqrt(&inner)?;
    Ok(root.trace().re.powi(2))
}

/// Bures distance `√(2(1 − √F))`.
pub fn bures_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let f = uhlmann_fidelity(rho, sigma)?;
    Ok((2.0 * (1.0 - f.sqrt())).max(0.0).sqrt())
}

pub const MIN_GRID: usize = 50;

#[derive(Clone, Debug)]
pub struct ProductSearchResult {
    /// Bloch angles `(θ_a, φ_a, θ_b, φ_b)` of the best product state.
    pub angles: [f64; 4],
    pub state: PureState,
    /// `|⟨ab|ψ⟩|`.
    pub overlap: f64,
    /// `√(2(1 − overlap))`.
    pub distance: f64,
}

fn qubit(theta: f64, phi: f64) -> [Complex64; 2] {
    [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]
}

fn overlap(m: &[Complex64], angles: &[f64; 4]) -> f64 {
    let a = qubit(angles[0], angles[1]);
    let b = qubit(angles[2], angles[3]);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += a[i].conj() * b[j].conj() * m[2 * i + j];
        }
    }
    acc.norm()
}

/// Brute-force closest product state to a two-qubit `ψ`: an exhaustive
/// `grid⁴` scan over Bloch angles followed by coordinate descent.
///
/// `grid` is clamped up to [`MIN_GRID`]. The grid is sharded across threads;
/// the reduction keeps the largest overlap and, on ties, the lowest grid index.
pub fn closest_product_state_search(psi: &PureState, grid: usize) -> Result<ProductSearchResult> {
    if psi.n_qubits() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            got: psi.n_qubits(),
        });
    }
    let grid = grid.max(MIN_GRID);
    let m = psi.amplitudes().to_vec();
    let thetas: Vec<f64> = (0..grid)
        .map(|k| PI * k as f64 / (grid - 1) as f64)
        .collect();
    let phis: Vec<f64> = (0..grid).map(|k| TAU * k as f64 / grid as f64).collect();
    let points: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
        .collect();
    let vectors: Vec<[Complex64; 2]> = points.iter().map(|&(t, p)| qubit(t, p)).collect();

    let (best_overlap, best_index) = vectors
        .par_iter()
        .enumerate()
        .map(|(ia, a)| {
            // v_j = Σ_i conj(a_i) M_ij
            let v = [
                a[0].conj() * m[0] + a[1].conj() * m[2],
                a[0].conj() * m[1] + a[1].conj() * m[3],
            ];
            let mut best = (f64::NEG_INFINITY, 0usize);
            for (ib, b) in vectors.iter().enumerate() {
                let o = (b[0].conj() * v[0] + b[1].conj() * v[1]).norm();
                if o > best.0 {
                    best = (o, ia * vectors.len() + ib);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |x, y| {
                if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    y
                } else {
                    x
                }
            },
        );

    let (ia, ib) = (best_index / vectors.len(), best_index % vectors.len());
    let mut angles = [points[ia].0, points[ia].1, points[ib].0, points[ib].1];
    let mut current = best_overlap;

    let mut step = PI / (grid - 1) as f64;
    while step > 1e-12 {
        let mut improved = false;
        for k in 0..4 {
            for dir in [1.0, -1.0] {
                let mut trial = angles;
                trial[k] += dir * step;
                let o = overlap(&m, &trial);
                if o > current {
                    current = o;
                    angles = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }

    let a = qubit(angles[0], angles[1]);
    let b = qubit(angles[2], angles[3]);
    let amps = vec![a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
    let state = PureState::normalized(2, amps)?;
    let current = current.min(1.0);
    Ok(ProductSearchResult {
        angles,
        state,
        overlap: current,
        distance: (2.0 * (1.0 - current)).max(0.0).sqrt(),
    })
}

/// Composite Simpson rule for `∫ dr / √(1 − r²)` on `[r_from, r_to]`, with
/// `r_to < 1`. An odd `subdivisions` is rounded up.
pub fn quadrature_reference(r_from: f64, r_to: f64, subdivisions: usize) -> Result<f64> {
    if !(0.0 <= r_from && r_from <= r_to && r_to < 1.0) {
        return Err(Error::BadRange(r_from, r_to));
    }
    if r_from == r_to {
        return Ok(0.0);
    }
    let n = subdivisions.max(2);
    let n = n + n % 2;
    let h = (r_to - r_from) / n as f64;
    let f = |r: f64| 1.0 / (1.0 - r * r).sqrt();
    let mut sum = f(r_from) + f(r_to);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(r_from + k as f64 * h);
    }
    Ok(sum * h / 3.0)
}
