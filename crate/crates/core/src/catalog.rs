//! Named state families and the three-qubit generalized Schmidt canonical form.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::state::{PureState, MAX_QUBITS};

/// Coefficients below this count as zero when classifying.
pub const GSD_ZERO_TOL: f64 = 1e-9;

fn check_n(n: usize) -> Result<()> {
    if (2..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedN(n))
    }
}

/// `(|0…0> + |1…1>)/√2`.
pub fn ghz(n: usize) -> Result<PureState> {
    check_n(n)?;
    let zeros = "0".repeat(n);
    let ones = "1".repeat(n);
    PureState::from_terms(n, &[(&zeros, 1.0), (&ones, 1.0)])
}

/// Uniform superposition of the `n` single-excitation basis states.
pub fn w(n: usize) -> Result<PureState> {
    check_n(n)?;
    let labels: Vec<String> = (0..n)
        .map(|k| (0..n).map(|q| if q == k { '1' } else { '0' }).collect())
        .collect();
    let terms: Vec<(&str, f64)> = labels.iter().map(|s| (s.as_str(), 1.0)).collect();
    PureState::from_terms(n, &terms)
}

/// `(|00> + |11>)/√2`.
pub fn bell() -> PureState {
    PureState::from_terms(2, &[("00", 1.0), ("11", 1.0)]).expect("valid Bell state")
}

/// The four Bell states `Φ+, Φ-, Ψ+, Ψ-`.
pub fn bell_states() -> [PureState; 4] {
    let mk = |terms: &[(&str, f64)]| PureState::from_terms(2, terms).expect("valid Bell state");
    [
        mk(&[("00", 1.0), ("11", 1.0)]),
        mk(&[("00", 1.0), ("11", -1.0)]),
        mk(&[("01", 1.0), ("10", 1.0)]),
        mk(&[("01", 1.0), ("10", -1.0)]),
    ]
}

/// Superposition of the symmetric triplet (equal weights) with the singlet:
/// `cosθ/√3 (|00> + (|01>+|10>)/√2 + |11>) + sinθ (|01>-|10>)/√2`.
pub fn psi1(theta: f64) -> PureState {
    let (s, c) = theta.sin_cos();
    let sym = c / 3f64.sqrt();
    PureState::from_terms(
        2,
        &[
            ("00", sym),
            ("01", sym * FRAC_1_SQRT_2 + s * FRAC_1_SQRT_2),
            ("10", sym * FRAC_1_SQRT_2 - s * FRAC_1_SQRT_2),
            ("11", sym),
        ],
    )
    .expect("psi1 is never the zero vector")
}

/// `cosθ (|00> - |11>)/√2 + sinθ |++>`.
pub fn psi2(theta: f64) -> PureState {
    let (s, c) = theta.sin_cos();
    let e = c * FRAC_1_SQRT_2;
    let p = s * 0.5;
    PureState::from_terms(2, &[("00", e + p), ("01", p), ("10", p), ("11", -e + p)])
        .expect("psi2 is never the zero vector")
}

/// `cos(θ/2)|000> + sin(θ/2)|111>`.
pub fn chi1(theta: f64) -> PureState {
    let (s, c) = (theta / 2.0).sin_cos();
    PureState::from_terms(3, &[("000", c), ("111", s)]).expect("chi1 is never the zero vector")
}

/// `(sinθ|000> + cosθ|110> + |111>)/√2`.
pub fn chi2(theta: f64) -> PureState {
    let (s, c) = theta.sin_cos();
    PureState::from_terms(
        3,
        &[
            ("000", s * FRAC_1_SQRT_2),
            ("110", c * FRAC_1_SQRT_2),
            ("111", FRAC_1_SQRT_2),
        ],
    )
    .expect("chi2 is never the zero vector")
}

/// `cosθ|001> + sinθ (|010> + |100>)/√2`.
pub fn chi3(theta: f64) -> PureState {
    let (s, c) = theta.sin_cos();
    PureState::from_terms(
        3,
        &[
            ("001", c),
            ("010", s * FRAC_1_SQRT_2),
            ("100", s * FRAC_1_SQRT_2),
        ],
    )
    .expect("chi3 is never the zero vector")
}

/// Real, nonnegative coefficients of
/// `λ0|000> + λ1|100> + λ2|101> + λ3|110> + λ4|111>`.
///
/// The general canonical form carries a phase on λ1; only the real
/// nonnegative case is represented here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GsdCoefficients {
    lambda: [f64; 5],
}

const GSD_LABELS: [&str; 5] = ["000", "100", "101", "110", "111"];

impl GsdCoefficients {
    pub fn new(lambda: [f64; 5]) -> Result<Self> {
        if lambda.iter().any(|l| !l.is_finite() || *l < 0.0) {
            return Err(Error::InvalidGsd(format!(
                "coefficients must be nonnegative: {lambda:?}"
            )));
        }
        let norm: f64 = lambda.iter().map(|l| l * l).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { lambda })
    }

    pub fn lambdas(&self) -> [f64; 5] {
        self.lambda
    }

    /// Class from the zero pattern of λ1..λ3; `None` unless λ0 and λ4 are both nonzero.
    pub fn classify(&self) -> Option<ClassLabel> {
        let [l0, l1, l2, l3, l4] = self.lambda;
        if l0 <= GSD_ZERO_TOL || l4 <= GSD_ZERO_TOL {
            return None;
        }
        let zeros = [l1, l2, l3].iter().filter(|&&l| l <= GSD_ZERO_TOL).count();
        Some(match zeros {
            3 => ClassLabel::Class1,
            2 => ClassLabel::Class2,
            1 => ClassLabel::Class3,
            _ => ClassLabel::Class4,
        })
    }
}

/// Genuinely entangled three-qubit LU classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    Class1,
    Class2,
    Class3,
    Class4,
}

pub fn from_gsd(c: &GsdCoefficients) -> PureState {
    let terms: Vec<(&str, f64)> = GSD_LABELS.iter().copied().zip(c.lambda).collect();
    PureState::from_terms(3, &terms).expect("normalized GSD coefficients")
}

/// State families addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Ghz,
    W,
    Bell,
    Psi1,
    Psi2,
    Chi1,
    Chi2,
    Chi3,
    Gsd,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Ghz,
        Family::W,
        Family::Bell,
        Family::Psi1,
        Family::Psi2,
        Family::Chi1,
        Family::Chi2,
        Family::Chi3,
        Family::Gsd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::Bell => "bell",
            Family::Psi1 => "psi1",
            Family::Psi2 => "psi2",
            Family::Chi1 => "chi1",
            Family::Chi2 => "chi2",
            Family::Chi3 => "chi3",
            Family::Gsd => "gsd",
        }
    }

    pub fn takes_theta(self) -> bool {
        matches!(
            self,
            Family::Psi1 | Family::Psi2 | Family::Chi1 | Family::Chi2 | Family::Chi3
        )
    }

    /// Evaluates a one-parameter family at `theta`.
    pub fn at(self, theta: f64) -> Option<PureState> {
        Some(match self {
            Family::Psi1 => psi1(theta),
            Family::Psi2 => psi2(theta),
            Family::Chi1 => chi1(theta),
            Family::Chi2 => chi2(theta),
            Family::Chi3 => chi3(theta),
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                format!(
                    "unknown family {s:?} (expected one of {})",
                    names.join(", ")
                )
            })
    }
}
