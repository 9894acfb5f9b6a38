//! Standard comparison measures and the combined per-state report.
//!
//! Everything here is computed from Schmidt spectra across the canonical
//! bipartitions, so biseparable cuts give exact zeros.

use std::fmt;
use std::str::FromStr;

use crate::bloch::MetricConfig;
use crate::error::{Error, Result};
use crate::measures::{gbr, geometric_mean, rem_two_qubit};
use crate::state::{
    enumerate_bipartitions, schmidt_spectrum, Bipartition, DensityOperator, PureState,
    SchmidtSpectrum, MAX_QUBITS,
};

/// Heron products above `-FILL_CLAMP` are treated as round-off.
pub const FILL_CLAMP: f64 = 1e-12;

fn entropy_of(probabilities: impl IntoIterator<Item = f64>) -> f64 {
    let s: f64 = probabilities
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    s.max(0.0)
}

/// `-Σ λ log₂ λ`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    Ok(entropy_of(rho.eigenvalues()?))
}

/// Entropy of either reduction across `p`.
pub fn entanglement_entropy(psi: &PureState, p: &Bipartition) -> Result<f64> {
    Ok(entropy_of(schmidt_spectrum(psi, p)?.probabilities()))
}

fn concurrence_of(spec: &SchmidtSpectrum) -> f64 {
    (2.0 * spec.linear_entropy()).max(0.0).sqrt()
}

/// `√(2(1 − Tr ρ²))` of either reduction across `p`.
pub fn bipartite_concurrence(psi: &PureState, p: &Bipartition) -> Result<f64> {
    Ok(concurrence_of(&schmidt_spectrum(psi, p)?))
}

fn all_spectra(psi: &PureState) -> Result<Vec<SchmidtSpectrum>> {
    let n = psi.n_qubits();
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    enumerate_bipartitions(n)?
        .iter()
        .map(|p| schmidt_spectrum(psi, p))
        .collect()
}

/// `1 − λ_max`, summed from the smaller probabilities to avoid cancellation.
fn tail_weight(spec: &SchmidtSpectrum) -> f64 {
    spec.probabilities().iter().skip(1).sum()
}

/// `1 − max_p λ_max(p)`.
pub fn ggm(psi: &PureState) -> Result<f64> {
    Ok(all_spectra(psi)?
        .iter()
        .map(tail_weight)
        .fold(f64::INFINITY, f64::min))
}

/// Minimum bipartite concurrence.
pub fn gmc(psi: &PureState) -> Result<f64> {
    Ok(all_spectra(psi)?
        .iter()
        .map(concurrence_of)
        .fold(f64::INFINITY, f64::min))
}

/// Geometric mean of bipartite concurrences.
pub fn gbc(psi: &PureState) -> Result<f64> {
    let cs: Vec<f64> = all_spectra(psi)?.iter().map(concurrence_of).collect();
    Ok(geometric_mean(&cs))
}

/// Area-based measure of the triangle with sides `C_i²` for the three
/// one-vs-rest cuts, scaled so GHZ gives 1.
pub fn concurrence_fill(psi: &PureState) -> Result<f64> {
    if psi.n_qubits() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: psi.n_qubits(),
        });
    }
    let sides: Vec<f64> = (0..3)
        .map(|q| {
            let c = bipartite_concurrence(psi, &Bipartition::new(3, &[q])?)?;
            Ok(c * c)
        })
        .collect::<Result<_>>()?;
    let q = sides.iter().sum::<f64>() / 2.0;
    let heron = q * sides.iter().map(|s| q - s).product::<f64>();
    let heron = if heron < 0.0 {
        if heron < -FILL_CLAMP {
            return Err(Error::InvalidTriangle(heron));
        }
        0.0
    } else {
        heron
    };
    Ok((16.0 / 3.0 * heron).powf(0.25))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Rem,
    S,
    C,
    Ggm,
    Gmc,
    Fill,
    Gbc,
    Gbr,
}

impl Measure {
    pub const ALL: [Measure; 8] = [
        Measure::Rem,
        Measure::S,
        Measure::C,
        Measure::Ggm,
        Measure::Gmc,
        Measure::Fill,
        Measure::Gbc,
        Measure::Gbr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Rem => "rem",
            Measure::S => "s",
            Measure::C => "c",
            Measure::Ggm => "ggm",
            Measure::Gmc => "gmc",
            Measure::Fill => "fill",
            Measure::Gbc => "gbc",
            Measure::Gbr => "gbr",
        }
    }

    /// Whether the measure is defined for `n` qubits.
    pub fn applies_to(self, n: usize) -> bool {
        match self {
            Measure::Rem => n == 2,
            Measure::Fill => n == 3,
            _ => (2..=MAX_QUBITS).contains(&n),
        }
    }

    /// Evaluates on `psi`. Entropy and concurrence use the first canonical
    /// cut, qubit 0 against the rest.
    pub fn evaluate(self, psi: &PureState, cfg: &MetricConfig) -> Result<f64> {
        let first_cut = || Bipartition::new(psi.n_qubits(), &[0]);
        match self {
            Measure::Rem => Ok(rem_two_qubit(psi, cfg)?.value),
            Measure::S => entanglement_entropy(psi, &first_cut()?),
            Measure::C => bipartite_concurrence(psi, &first_cut()?),
            Measure::Ggm => ggm(psi),
            Measure::Gmc => gmc(psi),
            Measure::Fill => concurrence_fill(psi),
            Measure::Gbc => gbc(psi),
            Measure::Gbr => Ok(gbr(psi)?.value),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownMeasure(pub String);

impl fmt::Display for UnknownMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = Measure::ALL.iter().map(|m| m.name()).collect();
        write!(
            f,
            "unknown measure '{}' (expected one of {})",
            self.0,
            names.join(", ")
        )
    }
}

impl std::error::Error for UnknownMeasure {}

impl FromStr for Measure {
    type Err = UnknownMeasure;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == lower)
            .ok_or_else(|| UnknownMeasure(s.to_string()))
    }
}

/// Named measure values for one state, in the order requested.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub state_label: String,
    pub values: Vec<(Measure, f64)>,
}

impl MeasureReport {
    pub fn get(&self, m: Measure) -> Option<f64> {
        self.values.iter().find(|(k, _)| *k == m).map(|(_, v)| *v)
    }
}

/// Evaluates `measures` on `psi`. Measures that do not apply to the qubit
/// count are errors.
pub fn measure_report(
    label: &str,
    psi: &PureState,
    measures: &[Measure],
    cfg: &MetricConfig,
) -> Result<MeasureReport> {
    let values = measures
        .iter()
        .map(|&m| Ok((m, m.evaluate(psi, cfg)?)))
        .collect::<Result<_>>()?;
    Ok(MeasureReport {
        state_label: label.to_string(),
        values,
    })
}
