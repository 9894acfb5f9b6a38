//! Pure states, density operators, partial traces and bipartitions.
//!
//! Qubit 0 is the leftmost label and the most significant bit of a basis
//! index: `b = Σ_k q_k · 2^(n-1-k)`. Every routine in the crate follows this.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    clamp_eigenvalue, hermitian_eigensystem, singular_values_of_columns, ComplexMatrix,
};

pub const MAX_QUBITS: usize = 6;
pub const NORM_TOL: f64 = 1e-12;
pub const DENSITY_TOL: f64 = 1e-12;

/// Schmidt coefficients at or below this are numerically zero. Pure-state
/// round-off leaves product cuts with coefficients around 1e-16.
pub const SCHMIDT_TOL: f64 = 1e-12;

/// Tolerance applied when reading a state file before renormalizing.
pub const FILE_NORM_TOL: f64 = 1e-6;

#[inline]
fn bit(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Index of the basis state restricted to `qubits` (in the given order).
fn sub_index(index: usize, qubits: &[usize], n: usize) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | bit(index, q, n))
}

/// Normalized amplitude vector of an `n`-qubit system.
#[derive(Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates length and normalization (`Σ|a|² = 1` within 1e-12).
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(n_qubits, amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(n_qubits, amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::NotNormalized(norm * norm));
        }
        Ok(Self {
            n_qubits,
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Computational basis state `|bits>`, e.g. `"010"`.
    pub fn basis(bits: &str) -> Result<Self> {
        let n = bits.len();
        let index = usize::from_str_radix(bits, 2)
            .map_err(|_| Error::BadSubset(format!("not a bit string: {bits:?}")))?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(n, amps)
    }

    /// Real superposition given as `(bit string, weight)` pairs, renormalized.
    pub fn from_terms(n_qubits: usize, terms: &[(&str, f64)]) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        for &(bits, w) in terms {
            if bits.len() != n_qubits {
                return Err(Error::BadSubset(format!(
                    "{bits:?} is not a {n_qubits}-qubit label"
                )));
            }
            let index = usize::from_str_radix(bits, 2)
                .map_err(|_| Error::BadSubset(format!("not a bit string: {bits:?}")))?;
            amps[index] += Complex64::new(w, 0.0);
        }
        Self::normalized(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        PureState {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes,
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Applies a 2×2 unitary to one qubit.
    pub fn apply_single_qubit(&self, qubit: usize, u: &ComplexMatrix) -> PureState {
        assert_eq!(u.dim(), 2);
        assert!(qubit < self.n_qubits);
        let n = self.n_qubits;
        let mask = 1 << (n - 1 - qubit);
        let mut out = self.amplitudes.clone();
        for i in 0..self.dim() {
            if i & mask != 0 {
                continue;
            }
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | mask]);
            out[i] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
            out[i | mask] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
        }
        PureState {
            n_qubits: n,
            amplitudes: out,
        }
    }

    /// Relabels qubits: old qubit `k` becomes new qubit `perm[k]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<PureState> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::BadSubset(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (b, &amp) in self.amplitudes.iter().enumerate() {
            let mut nb = 0;
            for (k, &target) in perm.iter().enumerate() {
                nb |= bit(b, k, n) << (n - 1 - target);
            }
            out[nb] = amp;
        }
        Ok(PureState {
            n_qubits: n,
            amplitudes: out,
        })
    }

    /// Reduced density operator on `keep`, computed from amplitudes directly.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityOperator> {
        let n = self.n_qubits;
        let keep = normalize_subset(keep, n)?;
        let trace_out: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let (dk, dt) = (1usize << keep.len(), 1usize << trace_out.len());
        // amplitude matrix psi[kept][traced]
        let mut mat = vec![Complex64::new(0.0, 0.0); dk * dt];
        for (b, &a) in self.amplitudes.iter().enumerate() {
            mat[sub_index(b, &keep, n) * dt + sub_index(b, &trace_out, n)] = a;
        }
        let mut rho = ComplexMatrix::zeros(dk);
        for i in 0..dk {
            for j in i..dk {
                let z: Complex64 = (0..dt)
                    .map(|t| mat[i * dt + t] * mat[j * dt + t].conj())
                    .sum();
                rho[(i, j)] = z;
                rho[(j, i)] = z.conj();
            }
        }
        Ok(DensityOperator {
            n_qubits: keep.len(),
            matrix: rho,
        })
    }

    /// Schmidt coefficients across `p`, descending.
    pub fn schmidt(&self, p: &Bipartition) -> Result<SchmidtSpectrum> {
        schmidt_spectrum(self, p)
    }
}

impl fmt::Debug for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PureState({} qubits) [", self.n_qubits)?;
        for (b, a) in self.amplitudes.iter().enumerate() {
            if a.norm() > 1e-14 {
                write!(
                    f,
                    " {:+.6}{:+.6}i|{:0w$b}>",
                    a.re,
                    a.im,
                    b,
                    w = self.n_qubits
                )?;
            }
        }
        write!(f, " ]")
    }
}

fn check_qubits(n: usize, len: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::UnsupportedN(n));
    }
    if len != 1 << n {
        return Err(Error::BadAmplitudeCount { n, len });
    }
    Ok(())
}

fn normalize_subset(keep: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::BadSubset("empty subset".into()));
    }
    if keep.len() >= n {
        return Err(Error::BadSubset("subset must be a proper subset".into()));
    }
    if let Some(&q) = keep.iter().find(|&&q| q >= n) {
        return Err(Error::BadSubset(format!(
            "qubit {q} out of range for {n} qubits"
        )));
    }
    Ok(keep)
}

/// Hermitian, positive semidefinite, unit-trace operator on qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates trace, Hermiticity and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::UnsupportedDim(dim));
        }
        let defect = matrix.hermiticity_defect();
        if defect > DENSITY_TOL {
            return Err(Error::NonHermitianInput(defect));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let spec = hermitian_eigensystem(&matrix)?;
        for &lam in &spec.eigenvalues {
            clamp_eigenvalue(lam)?;
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    /// `|ψ><ψ|`.
    pub fn from_pure(state: &PureState) -> Self {
        Self {
            n_qubits: state.n_qubits(),
            matrix: ComplexMatrix::outer(state.amplitudes(), state.amplitudes()),
        }
    }

    /// The maximally mixed state `I/dim`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        Self {
            n_qubits,
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    /// Eigenvalues ascending, round-off negatives clamped to zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigensystem(&self.matrix)?
            .eigenvalues
            .into_iter()
            .map(clamp_eigenvalue)
            .collect()
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn tensor(&self, other: &DensityOperator) -> Result<DensityOperator> {
        Ok(Self {
            n_qubits: self.n_qubits + other.n_qubits,
            matrix: crate::linalg::kron(&self.matrix, &other.matrix)?,
        })
    }
}

/// `|ψ><ψ|`.
pub fn density_from_pure(state: &PureState) -> DensityOperator {
    DensityOperator::from_pure(state)
}

/// Traces out every qubit not in `keep`. `keep` must be a nonempty proper subset.
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let n = rho.n_qubits();
    let keep = normalize_subset(keep, n)?;
    let trace_out: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let dim = rho.dim();
    // group full indices by (kept, traced) sub-indices
    let mut by_traced: Vec<Vec<(usize, usize)>> = vec![Vec::new(); 1 << trace_out.len()];
    for b in 0..dim {
        by_traced[sub_index(b, &trace_out, n)].push((sub_index(b, &keep, n), b));
    }
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(dk);
    for group in &by_traced {
        for &(i, bi) in group {
            for &(j, bj) in group {
                out[(i, j)] += m[(bi, bj)];
            }
        }
    }
    Ok(DensityOperator {
        n_qubits: keep.len(),
        matrix: out,
    })
}

/// A split of `n` qubits into two nonempty complementary blocks.
///
/// Canonical form: `small.len() <= large.len()`, and for equal sizes the
/// block containing qubit 0 is `small`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    n_qubits: usize,
    small: Vec<usize>,
    large: Vec<usize>,
}

impl Bipartition {
    /// Canonicalizes the split of `0..n` into `block` and its complement.
    pub fn new(n_qubits: usize, block: &[usize]) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::UnsupportedN(n_qubits));
        }
        let a = normalize_subset(block, n_qubits)?;
        let b: Vec<usize> = (0..n_qubits).filter(|q| !a.contains(q)).collect();
        let a_is_small = a.len() < b.len() || (a.len() == b.len() && a[0] == 0);
        let (small, large) = if a_is_small { (a, b) } else { (b, a) };
        Ok(Self {
            n_qubits,
            small,
            large,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn block_small(&self) -> &[usize] {
        &self.small
    }

    pub fn block_large(&self) -> &[usize] {
        &self.large
    }

    /// `(|small|, |large|)`.
    pub fn sizes(&self) -> (usize, usize) {
        (self.small.len(), self.large.len())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{}}}|{{{}}}", join(&self.small), join(&self.large))
    }
}

/// All `2^(n-1) - 1` canonical bipartitions, ordered lexicographically by
/// the small block.
pub fn enumerate_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let mut out: Vec<Bipartition> = (1..(1usize << n) - 1)
        .map(|mask| {
            let block: Vec<usize> = (0..n).filter(|&q| bit(mask, q, n) == 1).collect();
            Bipartition::new(n, &block).expect("mask is a proper nonempty subset")
        })
        .collect();
    out.sort_by(|a, b| a.small.cmp(&b.small));
    out.dedup();
    Ok(out)
}

/// Reduced state of the larger block (for equal sizes, the block without qubit 0).
pub fn reduced_for_bipartition(state: &PureState, p: &Bipartition) -> Result<DensityOperator> {
    if p.n_qubits() != state.n_qubits() {
        return Err(Error::WrongQubitCount {
            expected: p.n_qubits(),
            got: state.n_qubits(),
        });
    }
    state.reduce(p.block_large())
}

/// Schmidt coefficients of a pure state across a bipartition.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtSpectrum {
    /// Descending; values at or below [`SCHMIDT_TOL`] are exactly zero.
    coefficients: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Nonzero eigenvalues of either reduction, descending.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coefficients.iter().map(|s| s * s).collect()
    }

    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&s| s > 0.0).count()
    }

    /// True when the state factorizes across the cut.
    pub fn is_product(&self) -> bool {
        self.rank() <= 1
    }

    /// `1 - Tr ρ²` of either reduction, as `2 Σ_{i<j} λ_i λ_j`.
    pub fn linear_entropy(&self) -> f64 {
        let p = self.probabilities();
        let mut acc = 0.0;
        for i in 0..p.len() {
            for j in (i + 1)..p.len() {
                acc += p[i] * p[j];
            }
        }
        2.0 * acc
    }
}

pub fn schmidt_spectrum(state: &PureState, p: &Bipartition) -> Result<SchmidtSpectrum> {
    let n = state.n_qubits();
    if p.n_qubits() != n {
        return Err(Error::WrongQubitCount {
            expected: p.n_qubits(),
            got: n,
        });
    }
    let (small, large) = (p.block_small(), p.block_large());
    let rows = 1usize << large.len();
    let mut columns = vec![vec![Complex64::new(0.0, 0.0); rows]; 1 << small.len()];
    for (b, &a) in state.amplitudes().iter().enumerate() {
        columns[sub_index(b, small, n)][sub_index(b, large, n)] = a;
    }
    let mut coefficients = singular_values_of_columns(columns)?;
    for s in coefficients.iter_mut() {
        if *s <= SCHMIDT_TOL {
            *s = 0.0;
        }
    }
    Ok(SchmidtSpectrum { coefficients })
}

/// On-disk state: `{"n": 3, "amplitudes": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(state: &PureState) -> Self {
        Self {
            n: state.n_qubits(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    /// Converts to a state, renormalizing when `|‖ψ‖ - 1| <= 1e-6`.
    pub fn into_state(self) -> Result<PureState> {
        if self.n == 0 || self.n > MAX_QUBITS {
            return Err(Error::StateFile(format!(
                "unsupported qubit count {}",
                self.n
            )));
        }
        if self.amplitudes.len() != 1 << self.n {
            return Err(Error::StateFile(format!(
                "expected {} amplitude pairs for n = {}, found {}",
                1usize << self.n,
                self.n,
                self.amplitudes.len()
            )));
        }
        if self.amplitudes.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::StateFile("non-finite amplitude".into()));
        }
        let amps: Vec<Complex64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > FILE_NORM_TOL {
            return Err(Error::StateFile(format!(
                "state norm {norm} deviates from 1"
            )));
        }
        PureState::normalized(self.n, amps)
    }
}

pub fn parse_state_json(text: &str) -> Result<PureState> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))?;
    file.into_state()
}

pub fn read_state_file(path: &Path) -> Result<PureState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))?;
    parse_state_json(&text)
}
