//! Generalized Bloch geometry.
//!
//! A density operator on `d` levels is expanded as
//! `ρ = I/d + (√(d-1)/d) Σ x_i σ_i` with traceless Hermitian generators
//! normalized to `Tr(σ_i σ_j) = d δ_ij`. The coherence vector `x` lives in a
//! ball of radius 1; pure states sit on its surface. Distances are measured
//! with a monotone Riemannian metric selected by a Morozova–Čencov function
//! `f`; the Bures choice `f(t) = (1+t)/2` gives the radial element
//! `dr / √(1-r²)`.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, ComplexMatrix, EIGEN_CLAMP};
use crate::quadrature::integrate;
use crate::state::DensityOperator;

pub const DEFAULT_EPSILON_BOUNDARY: f64 = 1e-9;
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Sparse traceless Hermitian generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl Generator {
    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim);
        for &(i, j, z) in &self.entries {
            m[(i, j)] = z;
        }
        m
    }

    /// `Tr(M σ)`.
    pub fn trace_with(&self, m: &ComplexMatrix) -> Complex64 {
        self.entries.iter().map(|&(i, j, z)| z * m[(j, i)]).sum()
    }
}

/// Generalized Gell-Mann generators rescaled to `Tr(σ_i σ_j) = d δ_ij`.
///
/// Order: symmetric pairs `(j, k)`, `j < k`, lexicographic; then the
/// antisymmetric pairs in the same order; then the diagonal family.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<Generator>,
}

const SUPPORTED_DIMS: [usize; 5] = [2, 4, 8, 16, 32];

impl GeneratorBasis {
    pub fn new(dim: usize) -> Result<Self> {
        if !SUPPORTED_DIMS.contains(&dim) {
            return Err(Error::UnsupportedDim(dim));
        }
        let scale = (dim as f64 / 2.0).sqrt();
        let re = |v: f64| Complex64::new(v * scale, 0.0);
        let im = |v: f64| Complex64::new(0.0, v * scale);
        let pairs: Vec<(usize, usize)> = (0..dim)
            .flat_map(|j| ((j + 1)..dim).map(move |k| (j, k)))
            .collect();

        let mut generators = Vec::with_capacity(dim * dim - 1);
        for &(j, k) in &pairs {
            generators.push(Generator {
                dim,
                entries: vec![(j, k, re(1.0)), (k, j, re(1.0))],
            });
        }
        for &(j, k) in &pairs {
            generators.push(Generator {
                dim,
                entries: vec![(j, k, im(-1.0)), (k, j, im(1.0))],
            });
        }
        for l in 1..dim {
            let c = (2.0 / (l * (l + 1)) as f64).sqrt();
            let mut entries: Vec<_> = (0..l).map(|i| (i, i, re(c))).collect();
            entries.push((l, l, re(-(l as f64) * c)));
            generators.push(Generator { dim, entries });
        }
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn matrix(&self, i: usize) -> ComplexMatrix {
        self.generators[i].to_matrix()
    }
}

/// Shared, lazily built basis for `dim`.
pub fn generator_basis(dim: usize) -> Result<&'static GeneratorBasis> {
    static CACHE: [OnceLock<GeneratorBasis>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    let slot = SUPPORTED_DIMS
        .iter()
        .position(|&d| d == dim)
        .ok_or(Error::UnsupportedDim(dim))?;
    Ok(CACHE[slot].get_or_init(|| GeneratorBasis::new(dim).expect("supported dimension")))
}

/// Real coordinates of a unit-trace Hermitian operator in the generator basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceVector {
    dim: usize,
    x: Vec<f64>,
}

impl CoherenceVector {
    pub fn new(dim: usize, x: Vec<f64>) -> Result<Self> {
        if !SUPPORTED_DIMS.contains(&dim) {
            return Err(Error::UnsupportedDim(dim));
        }
        if x.len() != dim * dim - 1 {
            return Err(Error::DimMismatch(dim * dim - 1, x.len()));
        }
        Ok(Self { dim, x })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[f64] {
        &self.x
    }

    /// Radial coordinate `‖x‖`.
    pub fn r(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Same direction, radius `r`.
    pub fn rescaled(&self, r: f64) -> Self {
        let cur = self.r();
        let x = if cur == 0.0 {
            self.x.clone()
        } else {
            self.x.iter().map(|v| v * r / cur).collect()
        };
        Self { dim: self.dim, x }
    }
}

/// `x_i = Tr(ρ σ_i) / √(d-1)`.
pub fn coherence_vector(rho: &DensityOperator) -> Result<CoherenceVector> {
    let d = rho.dim();
    let basis = generator_basis(d)?;
    let norm = ((d - 1) as f64).sqrt();
    let x = basis
        .generators()
        .iter()
        .map(|g| g.trace_with(rho.matrix()).re / norm)
        .collect();
    CoherenceVector::new(d, x)
}

/// Operator reconstructed from a coherence vector. For `d > 2` a point in
/// the unit ball need not be positive semidefinite, so positivity is
/// reported instead of enforced.
#[derive(Clone, Debug)]
pub struct ExpandedOperator {
    pub matrix: ComplexMatrix,
    pub min_eigenvalue: f64,
    pub is_psd: bool,
}

impl ExpandedOperator {
    pub fn into_density(self) -> Result<DensityOperator> {
        if !self.is_psd {
            return Err(Error::NegativeEigenvalue(self.min_eigenvalue));
        }
        DensityOperator::new(self.matrix)
    }
}

/// `ρ(x) = I/d + (√(d-1)/d) Σ x_i σ_i`.
pub fn state_from_coherence_vector(v: &CoherenceVector) -> Result<ExpandedOperator> {
    let r = v.r();
    if r > 1.0 + 1e-9 {
        return Err(Error::NormTooLarge(r));
    }
    let d = v.dim();
    let basis = generator_basis(d)?;
    let coef = ((d - 1) as f64).sqrt() / d as f64;
    let mut m = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
    for (g, &xi) in basis.generators().iter().zip(v.components()) {
        if xi == 0.0 {
            continue;
        }
        for &(i, j, z) in g.entries() {
            m[(i, j)] += z * (coef * xi);
        }
    }
    let min_eigenvalue = hermitian_eigensystem(&m)?.eigenvalues[0];
    Ok(ExpandedOperator {
        matrix: m,
        min_eigenvalue,
        is_psd: min_eigenvalue >= -EIGEN_CLAMP,
    })
}

/// `(r, θ_1, …, θ_{k-2}, φ)` for a point in `R^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersphericalPoint {
    pub r: f64,
    /// Polar angles in `[0, π]`; `θ_1` is measured from the last Cartesian axis.
    pub angles: Vec<f64>,
    /// Azimuth in `[0, 2π)` in the plane of the first two coordinates.
    pub phi: f64,
}

impl HypersphericalPoint {
    /// Number of Cartesian coordinates.
    pub fn ambient_dim(&self) -> usize {
        self.angles.len() + 2
    }
}

/// Converts Cartesian coordinates (length at least 2). For three coordinates
/// this is `θ = arccos(x_3 / r)`, `φ = atan2(x_2, x_1)`. Angles are zero at
/// the origin.
pub fn cartesian_to_hyperspherical(x: &[f64]) -> HypersphericalPoint {
    assert!(x.len() >= 2, "need at least two coordinates");
    let k = x.len();
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return HypersphericalPoint {
            r: 0.0,
            angles: vec![0.0; k - 2],
            phi: 0.0,
        };
    }
    // tail[m] = ‖x[0..m]‖
    let mut tail = vec![0.0f64; k + 1];
    for m in 1..=k {
        tail[m] = tail[m - 1].hypot(x[m - 1]);
    }
    let angles = (1..=k - 2).map(|j| tail[k - j].atan2(x[k - j])).collect();
    let mut phi = x[1].atan2(x[0]);
    if phi < 0.0 {
        phi += TAU;
    }
    if phi >= TAU {
        phi = 0.0;
    }
    HypersphericalPoint { r, angles, phi }
}

pub fn hyperspherical_to_cartesian(p: &HypersphericalPoint) -> Vec<f64> {
    let k = p.ambient_dim();
    let mut x = vec![0.0; k];
    let mut prefix = p.r;
    for (j, &theta) in p.angles.iter().enumerate() {
        x[k - 1 - j] = prefix * theta.cos();
        prefix *= theta.sin();
    }
    x[1] = prefix * p.phi.sin();
    x[0] = prefix * p.phi.cos();
    x
}

/// Morozova–Čencov function selecting a monotone metric.
#[derive(Clone)]
pub enum McFunction {
    /// `f(t) = (1+t)/2`.
    Bures,
    /// `f ≡ 1`.
    Unit,
    Custom {
        name: String,
        f: fn(f64) -> f64,
    },
}

impl McFunction {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            McFunction::Bures => 0.5 * (1.0 + t),
            McFunction::Unit => 1.0,
            McFunction::Custom { f, .. } => f(t),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            McFunction::Bures => "bures",
            McFunction::Unit => "unit",
            McFunction::Custom { name, .. } => name,
        }
    }
}

impl fmt::Debug for McFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "McFunction({})", self.name())
    }
}

#[derive(Clone, Debug)]
pub struct MetricConfig {
    mc_function: McFunction,
    /// Multiply the metric by 1/4 (lengths by 1/2).
    pub include_quarter_prefactor: bool,
    /// Smallest distance from the boundary used in the `r → 1` limit.
    pub epsilon_boundary: f64,
    /// Absolute tolerance of each quadrature.
    pub quad_tol: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            mc_function: McFunction::Bures,
            include_quarter_prefactor: false,
            epsilon_boundary: DEFAULT_EPSILON_BOUNDARY,
            quad_tol: DEFAULT_QUAD_TOL,
        }
    }
}

impl MetricConfig {
    /// Only `f(1) = 1` is checked; operator monotonicity and self-inversion
    /// are the caller's responsibility.
    pub fn with_mc_function(mut self, f: McFunction) -> Result<Self> {
        let at_one = f.eval(1.0);
        if (at_one - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMcFunction(at_one));
        }
        self.mc_function = f;
        Ok(self)
    }

    pub fn with_epsilon(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1e-4) {
            return Err(Error::BadRange(eps, 1e-4));
        }
        self.epsilon_boundary = eps;
        Ok(self)
    }

    pub fn with_quad_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::BadRange(tol, f64::INFINITY));
        }
        self.quad_tol = tol;
        Ok(self)
    }

    pub fn mc_function(&self) -> &McFunction {
        &self.mc_function
    }

    fn prefactor(&self) -> f64 {
        if self.include_quarter_prefactor {
            0.25
        } else {
            1.0
        }
    }
}

/// Diagonal of the metric at `p`: `G_rr = 1/(1-r²)` followed by the round
/// sphere metric scaled by `r² / ((1+r) f((1-r)/(1+r)))`.
pub fn metric_tensor_at(p: &HypersphericalPoint, cfg: &MetricConfig) -> Result<Vec<f64>> {
    let r = p.r;
    if r.is_nan() || r < 0.0 {
        return Err(Error::BadRange(r, 1.0));
    }
    if r >= 1.0 {
        return Err(Error::BoundaryPoint(r));
    }
    let scale = cfg.prefactor();
    let t = (1.0 - r) / (1.0 + r);
    let angular = r * r / ((1.0 + r) * cfg.mc_function.eval(t));
    let mut diag = Vec::with_capacity(p.ambient_dim());
    diag.push(scale / (1.0 - r * r));
    let mut sin_prod = 1.0;
    for theta in &p.angles {
        diag.push(scale * angular * sin_prod);
        sin_prod *= theta.sin().powi(2);
    }
    diag.push(scale * angular * sin_prod);
    Ok(diag)
}

fn radial_element(cfg: &MetricConfig) -> impl Fn(f64) -> f64 {
    let s = cfg.prefactor().sqrt();
    move |r: f64| s / (1.0 - r * r).sqrt()
}

/// Boundary offsets used in the `r → 1` extrapolation, largest first.
pub fn limit_offsets(cfg: &MetricConfig) -> [f64; 4] {
    let e = cfg.epsilon_boundary;
    [1e3 * e, 1e2 * e, 1e1 * e, e]
}

/// Length of the radial geodesic between radii `r_from <= r_to <= 1`.
///
/// When `r_to = 1` the integral is taken to `1 - ε` for the four offsets of
/// [`limit_offsets`] and extrapolated to `ε = 0`. The truncation error is a
/// series in odd powers of `√ε`, which the Richardson table removes term by term.
pub fn geodesic_length_radial(r_from: f64, r_to: f64, cfg: &MetricConfig) -> Result<f64> {
    if !(0.0 <= r_from && r_from <= r_to && r_to <= 1.0) {
        return Err(Error::BadRange(r_from, r_to));
    }
    if r_from == r_to {
        return Ok(0.0);
    }
    let g = radial_element(cfg);
    if r_to < 1.0 {
        return integrate(&g, r_from, r_to, cfg.quad_tol);
    }

    let offsets = limit_offsets(cfg);
    let mut lengths = [0.0; 4];
    let mut acc = integrate(&g, r_from, 1.0 - offsets[0], cfg.quad_tol)?;
    lengths[0] = acc;
    for k in 1..offsets.len() {
        acc += integrate(&g, 1.0 - offsets[k - 1], 1.0 - offsets[k], cfg.quad_tol)?;
        lengths[k] = acc;
    }
    Ok(richardson_sqrt_eps(&lengths, 10f64.sqrt()))
}

/// Extrapolates `L(ε_k)` to `ε = 0` assuming `L(ε) = L0 + c1 h + c3 h³ + c5 h⁵`
/// with `h = √ε` and consecutive `h` shrinking by `ratio`.
fn richardson_sqrt_eps(values: &[f64], ratio: f64) -> f64 {
    let mut table = values.to_vec();
    for (level, power) in [1, 3, 5].into_iter().enumerate() {
        let factor = ratio.powi(power);
        let next: Vec<f64> = table
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        table = next;
        if table.len() == 1 || level == values.len() - 2 {
            break;
        }
    }
    table[table.len() - 1]
}

/// Closed form of the unscaled Bures radial length, `arcsin(b) - arcsin(a)`.
pub fn bures_radial_closed_form(r_from: f64, r_to: f64) -> f64 {
    r_to.asin() - r_from.asin()
}

/// Distance from the center to the boundary, the normalization of the
/// two-qubit measure.
pub fn center_to_boundary(cfg: &MetricConfig) -> Result<f64> {
    geodesic_length_radial(0.0, 1.0, cfg)
}
