//! Riemannian entanglement measures: the two-qubit REM, the per-bipartition
//! bREM and their geometric mean GBR.

use std::f64::consts::FRAC_2_PI;

use crate::bloch::{coherence_vector, geodesic_length_radial, MetricConfig};
use crate::error::{Error, Result};
use crate::state::{
    enumerate_bipartitions, schmidt_spectrum, Bipartition, DensityOperator, PureState,
    SchmidtSpectrum, MAX_QUBITS,
};

#[derive(Clone, Debug, PartialEq)]
pub struct RemResult {
    /// Radial coordinate of the one-qubit reduction.
    pub r: f64,
    /// Geodesic length from the reduction to the radially outward surface point.
    pub length_ap: f64,
    /// `length_ap` over the center-to-surface length.
    pub value: f64,
}

/// `(2/π) arccos r`, the Bures closed form of the two-qubit measure.
pub fn rem_closed_form(r: f64) -> f64 {
    FRAC_2_PI * r.clamp(-1.0, 1.0).acos()
}

/// Radial coordinate of either one-qubit reduction, `σ₁² − σ₂²`.
///
/// Taken from the Schmidt coefficients so that product states land exactly
/// on the surface.
pub fn two_qubit_radius(psi: &PureState) -> Result<f64> {
    if psi.n_qubits() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            got: psi.n_qubits(),
        });
    }
    let spec = schmidt_spectrum(psi, &Bipartition::new(2, &[0])?)?;
    let p = spec.probabilities();
    let total: f64 = p.iter().sum();
    let r = match p.as_slice() {
        [a, b, ..] => (a - b) / total,
        _ => 1.0,
    };
    Ok(r.clamp(0.0, 1.0))
}

/// Measure for a one-qubit reduction with radial coordinate `r`, by
/// quadrature of the metric.
pub fn rem_from_radius(r: f64, cfg: &MetricConfig) -> Result<RemResult> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::BadRange(r, 1.0));
    }
    let length_ap = geodesic_length_radial(r, 1.0, cfg)?;
    let norm = geodesic_length_radial(0.0, 1.0, cfg)?;
    Ok(RemResult {
        r,
        length_ap,
        value: length_ap / norm,
    })
}

pub fn rem_two_qubit(psi: &PureState, cfg: &MetricConfig) -> Result<RemResult> {
    rem_from_radius(two_qubit_radius(psi)?, cfg)
}

/// Same measure, with `r` read off the coherence vector of a given
/// one-qubit reduction.
pub fn rem_from_reduction(rho: &DensityOperator, cfg: &MetricConfig) -> Result<RemResult> {
    if rho.dim() != 2 {
        return Err(Error::DimMismatch(2, rho.dim()));
    }
    let r = coherence_vector(rho)?.r().min(1.0);
    rem_from_radius(r, cfg)
}

/// Bures distance between `ρ` and the maximally mixed state of the same
/// dimension, `√(2(1 − Σ√λ_i / √D))`.
pub fn bures_distance_to_max_mixed(rho: &DensityOperator) -> Result<f64> {
    let d = rho.dim() as f64;
    let root_sum: f64 = rho.eigenvalues()?.iter().map(|l| l.sqrt()).sum();
    Ok((2.0 * (1.0 - root_sum / d.sqrt())).max(0.0).sqrt())
}

/// Largest attainable bipartite complement for block sizes `(small, large)`.
pub fn bipartition_normalization(small: usize, large: usize) -> Result<f64> {
    if small < 1 || large < small || small + large > MAX_QUBITS {
        return Err(Error::BadSizes(small, large));
    }
    let l = large as f64;
    let s = small as f64;
    let pure = (2.0 * (1.0 - (-l / 2.0).exp2())).sqrt();
    let floor = (2.0 * (1.0 - ((s - l) / 2.0).exp2())).max(0.0).sqrt();
    Ok(pure - floor)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BremResult {
    pub bipartition: Bipartition,
    /// Spectrum of the larger-block reduction, ascending, zero padded.
    pub eigenvalues: Vec<f64>,
    pub unnormalized: f64,
    pub normalization: f64,
    pub value: f64,
}

/// Distance of the pure state from the center minus that of the larger
/// block's reduction, both in the Bures metric.
fn brem_complement(spec: &SchmidtSpectrum, large: usize) -> f64 {
    if spec.is_product() {
        return 0.0;
    }
    let scale = (-(large as f64) / 2.0).exp2();
    let root_sum: f64 = spec.coefficients().iter().sum();
    let a = 2.0 * (1.0 - scale);
    let b = (2.0 * (1.0 - root_sum * scale)).max(0.0);
    // a - b without cancellation
    let diff = 2.0 * (root_sum - 1.0) * scale;
    diff / (a.sqrt() + b.sqrt())
}

pub fn brem(psi: &PureState, p: &Bipartition) -> Result<BremResult> {
    let spec = schmidt_spectrum(psi, p)?;
    let (s, l) = p.sizes();
    let normalization = bipartition_normalization(s, l)?;
    let unnormalized = brem_complement(&spec, l);

    let mut eigenvalues = spec.probabilities();
    eigenvalues.resize(1 << l, 0.0);
    eigenvalues.sort_by(f64::total_cmp);

    Ok(BremResult {
        bipartition: p.clone(),
        eigenvalues,
        unnormalized,
        normalization,
        value: unnormalized / normalization,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GbrResult {
    pub per_bipartition: Vec<BremResult>,
    pub value: f64,
}

/// Geometric mean, exactly zero if any factor is zero.
pub fn geometric_mean(values: &[f64]) -> f64 {
    if values.is_empty() || values.iter().any(|&v| v <= 0.0) {
        return 0.0;
    }
    let product: f64 = values.iter().product();
    product.powf(1.0 / values.len() as f64)
}

pub fn gbr(psi: &PureState) -> Result<GbrResult> {
    let n = psi.n_qubits();
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let per_bipartition = enumerate_bipartitions(n)?
        .iter()
        .map(|p| brem(psi, p))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = per_bipartition.iter().map(|b| b.value).collect();
    Ok(GbrResult {
        value: geometric_mean(&values),
        per_bipartition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bell, chi1, chi2, ghz, w};
    use crate::linalg::{c, ComplexMatrix};
    use crate::state::partial_trace;
    use std::f64::consts::FRAC_PI_8;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn schmidt_pair(theta: f64) -> PureState {
        PureState::from_terms(2, &[("00", theta.cos()), ("11", theta.sin())]).unwrap()
    }

    #[test]
    fn rem_examples() {
        let cfg = MetricConfig::default();
        let b = rem_two_qubit(&bell(), &cfg).unwrap();
        assert!(close(b.r, 0.0, 1e-15) && close(b.value, 1.0, 1e-9));

        let p = rem_two_qubit(&PureState::basis("00").unwrap(), &cfg).unwrap();
        assert_eq!((p.r, p.value), (1.0, 0.0));

        let s = rem_two_qubit(&schmidt_pair(FRAC_PI_8), &cfg).unwrap();
        assert!(close(s.r, 0.5f64.sqrt(), 1e-12));
        assert!(close(s.value, 0.5, 1e-9));

        assert!(matches!(
            rem_two_qubit(&ghz(3).unwrap(), &cfg),
            Err(Error::WrongQubitCount { .. })
        ));
    }

    #[test]
    fn rem_quadrature_matches_closed_form() {
        let cfg = MetricConfig::default();
        for k in 0..=100 {
            let r = k as f64 / 100.0;
            let q = rem_from_radius(r, &cfg).unwrap();
            assert!(close(q.value, rem_closed_form(r), 1e-8), "r={r}");
        }
    }

    #[test]
    fn either_reduction_gives_same_rem() {
        let cfg = MetricConfig::default();
        let psi = PureState::normalized(
            2,
            vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0), c(0.1, -0.4)],
        )
        .unwrap();
        let rho = DensityOperator::from_pure(&psi);
        let a = rem_from_reduction(&partial_trace(&rho, &[0]).unwrap(), &cfg).unwrap();
        let b = rem_from_reduction(&partial_trace(&rho, &[1]).unwrap(), &cfg).unwrap();
        let s = rem_two_qubit(&psi, &cfg).unwrap();
        assert!(close(a.value, b.value, 1e-9));
        assert!(close(a.value, s.value, 1e-9));
    }

    #[test]
    fn bures_to_center_examples() {
        assert!(bures_distance_to_max_mixed(&DensityOperator::maximally_mixed(2)).unwrap() < 1e-7);
        let pure = DensityOperator::from_pure(&PureState::basis("01").unwrap());
        assert!(close(
            bures_distance_to_max_mixed(&pure).unwrap(),
            1.0,
            1e-12
        ));
        let red = DensityOperator::new(ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        let want = (2.0 - 2f64.sqrt()).sqrt();
        assert!(close(
            bures_distance_to_max_mixed(&red).unwrap(),
            want,
            1e-12
        ));
    }

    #[test]
    fn normalization_examples() {
        let n12 = 1.0 - (2.0 - 2f64.sqrt()).sqrt();
        assert!(close(bipartition_normalization(1, 2).unwrap(), n12, 1e-15));
        assert!(close(bipartition_normalization(2, 2).unwrap(), 1.0, 1e-15));
        let n13 = (2.0 * (1.0 - 2f64.powf(-1.5))).sqrt() - 1.0;
        assert!(close(bipartition_normalization(1, 3).unwrap(), n13, 1e-15));
        assert!(close(n13, 0.137055, 5e-7));
        for bad in [(0, 2), (2, 1), (3, 4)] {
            assert!(matches!(
                bipartition_normalization(bad.0, bad.1),
                Err(Error::BadSizes(..))
            ));
        }
    }

    #[test]
    fn brem_examples() {
        let g = ghz(3).unwrap();
        for p in enumerate_bipartitions(3).unwrap() {
            let b = brem(&g, &p).unwrap();
            assert!(close(b.value, 1.0, 1e-12));
            assert!(close(
                b.unnormalized,
                1.0 - (2.0 - 2f64.sqrt()).sqrt(),
                1e-12
            ));
            assert_eq!(b.eigenvalues.len(), 4);
        }
        let ww = w(3).unwrap();
        for p in enumerate_bipartitions(3).unwrap() {
            let b = brem(&ww, &p).unwrap();
            assert!(close(b.value, 0.943_778_126, 1e-8));
        }
        let sep = PureState::basis("0").unwrap().tensor(&bell());
        let b = brem(&sep, &Bipartition::new(3, &[0]).unwrap()).unwrap();
        assert_eq!(b.value, 0.0);
    }

    #[test]
    fn brem_unnormalized_matches_distance_difference() {
        let g = w(3).unwrap();
        let p = Bipartition::new(3, &[1]).unwrap();
        let b = brem(&g, &p).unwrap();
        let rho = g.reduce(p.block_large()).unwrap();
        let pure = DensityOperator::from_pure(&PureState::basis("00").unwrap());
        let direct = bures_distance_to_max_mixed(&pure).unwrap()
            - bures_distance_to_max_mixed(&rho).unwrap();
        assert!(close(b.unnormalized, direct, 1e-9));
    }

    #[test]
    fn gbr_examples() {
        assert!(close(gbr(&ghz(3).unwrap()).unwrap().value, 1.0, 1e-9));
        let ww = gbr(&w(3).unwrap()).unwrap();
        assert_eq!(ww.per_bipartition.len(), 3);
        assert!(close(ww.value, 0.943_778_126, 1e-8));
        let sep = PureState::basis("0").unwrap().tensor(&bell());
        assert_eq!(gbr(&sep).unwrap().value, 0.0);
        assert!(close(gbr(&bell()).unwrap().value, 1.0, 1e-12));
        assert!(matches!(
            gbr(&PureState::basis("0").unwrap()),
            Err(Error::UnsupportedN(1))
        ));
    }

    #[test]
    fn chi_family_values() {
        let q = std::f64::consts::FRAC_PI_4;
        assert!(close(gbr(&chi1(q)).unwrap().value, 0.712_906, 1e-6));
        assert!(close(gbr(&chi2(q)).unwrap().value, 0.813_176, 1e-6));
    }

    #[test]
    fn larger_registers_are_bounded() {
        for n in 4..=6 {
            let g = gbr(&ghz(n).unwrap()).unwrap();
            assert!(g.value > 0.0 && g.value <= 1.0 + 1e-9);
            let ww = gbr(&w(n).unwrap()).unwrap();
            assert!(ww.value > 0.0 && ww.value <= 1.0 + 1e-9);
            assert_eq!(g.per_bipartition.len(), (1 << (n - 1)) - 1);
        }
    }
}
