//! Dense complex matrix kernel.
//!
//! Everything downstream works with matrices of dimension at most 64, so the
//! kernel favours simple, deterministic algorithms: a cyclic complex Jacobi
//! eigensolver for Hermitian matrices and a one-sided (Hestenes) Jacobi
//! iteration for singular values.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest matrix dimension accepted by the kernel.
pub const MAX_DIM: usize = 64;

/// Tolerance for the Hermiticity check on eigensolver input.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as round-off and set to zero.
pub const EIGEN_CLAMP: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if `data.len()` is not a square.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "entry count must be dim^2");
        Self { dim, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        assert_eq!(u.len(), v.len());
        let dim = u.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim, other.dim);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim {
            for k in 0..self.dim {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M[i][j] - conj(M[j][i])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    fn hermitian_part(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..self.dim {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
        }
        m
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `V diag(f(λ)) V†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|l| l)
    }
}

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Sweeps visit pairs `(p, q)` in row order, so the output is
/// deterministic for identical input.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<Spectrum> {
    let n = m.dim();
    if n > MAX_DIM {
        return Err(Error::DimensionOverflow(n));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NonHermitianInput(defect));
    }
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    if scale == 0.0 || n == 1 {
        return Ok(sorted_spectrum(&a, v));
    }
    let threshold = (f64::EPSILON * scale).powi(2) * 1e-2;

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    Ok(sorted_spectrum(&a, v))
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Negligible against both diagonal entries: zero it outright.
    if mag <= f64::EPSILON * 1e-3 * (app.abs().min(aqq.abs())) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = [[c, s e^{iφ}], [-s e^{-iφ}, c]] on the (p, q) plane; A <- J† A J.
    let s_fwd = phase * s;
    let s_bwd = phase.conj() * s;
    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s_bwd;
        a[(k, q)] = akp * s_fwd + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s_fwd;
        a[(q, k)] = apk * s_bwd + aqk * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s_bwd;
        v[(k, q)] = vkp * s_fwd + vkq * c;
    }
}

fn sorted_spectrum(a: &ComplexMatrix, v: ComplexMatrix) -> Spectrum {
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vecs[(i, new)] = v[(i, old)];
        }
    }
    Spectrum {
        eigenvalues,
        eigenvectors: vecs,
    }
}

/// Clamps round-off negatives in `[-EIGEN_CLAMP, 0)` to zero.
pub fn clamp_eigenvalue(lam: f64) -> Result<f64> {
    if lam >= 0.0 {
        Ok(lam)
    } else if lam >= -EIGEN_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeEigenvalue(lam))
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = hermitian_eigensystem(m)?;
    for &lam in &spec.eigenvalues {
        clamp_eigenvalue(lam)?;
    }
    Ok(spec.map_eigenvalues(|l| l.max(0.0).sqrt()))
}

/// Tensor product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    if dim > MAX_DIM {
        return Err(Error::DimensionOverflow(dim));
    }
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Singular values (descending) of the matrix whose columns are `columns`,
/// by one-sided Jacobi orthogonalization. Small singular values come out
/// with absolute accuracy near machine precision, which a detour through
/// the eigenvalues of `A†A` would lose to the square root.
pub fn singular_values_of_columns(mut columns: Vec<Vec<Complex64>>) -> Result<Vec<f64>> {
    let k = columns.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let len = columns[0].len();
    if columns.iter().any(|c| c.len() != len) {
        return Err(Error::DimMismatch(
            len,
            columns.iter().map(Vec::len).max().unwrap_or(0),
        ));
    }

    let mut converged = k == 1;
    for _sweep in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for i in 0..k - 1 {
            for j in (i + 1)..k {
                let (alpha, beta, gamma) = {
                    let (ci, cj) = (&columns[i], &columns[j]);
                    let alpha: f64 = ci.iter().map(|z| z.norm_sqr()).sum();
                    let beta: f64 = cj.iter().map(|z| z.norm_sqr()).sum();
                    let gamma: Complex64 = ci.iter().zip(cj).map(|(a, b)| a.conj() * b).sum();
                    (alpha, beta, gamma)
                };
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = columns.split_at_mut(j);
                let ci = &mut left[i];
                let cj = &mut right[0];
                for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
                    let yr = *y * phase.conj();
                    let nx = *x * c - yr * s;
                    let ny = *x * s + yr * c;
                    *x = nx;
                    *y = ny;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    let mut sv: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Pauli matrices `σx, σy, σz`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        ComplexMatrix::from_vec(2, vec![z, one, one, z]),
        ComplexMatrix::from_vec(2, vec![z, -i, i, z]),
        ComplexMatrix::from_vec(2, vec![one, z, z, -one]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_density, random_hermitian, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_spectrum_ok(m: &ComplexMatrix, spec: &Spectrum) {
        let n = m.dim();
        let recon = spec.reconstruct();
        assert!(
            recon.max_abs_diff(m) <= 1e-10 * n as f64,
            "reconstruction error"
        );
        let v = &spec.eigenvectors;
        let gram = &v.adjoint() * v;
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn identity_eigenvalues() {
        let spec = hermitian_eigensystem(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(spec.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let m = ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5]);
        let spec = hermitian_eigensystem(&m).unwrap();
        assert_eq!(spec.eigenvalues, vec![0.0, 0.0, 0.5, 0.5]);
    }

    #[test]
    fn pauli_x_closed_form() {
        let [x, _, _] = pauli();
        let spec = hermitian_eigensystem(&x).unwrap();
        assert!((spec.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((spec.eigenvalues[1] - 1.0).abs() < 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // (|0> - |1>)/√2 and (|0> + |1>)/√2 up to a phase
        let minus = [c(h, 0.0), c(-h, 0.0)];
        let plus = [c(h, 0.0), c(h, 0.0)];
        for (k, want) in [minus, plus].iter().enumerate() {
            let got = spec.eigenvectors.column(k);
            let overlap: Complex64 = got.iter().zip(want).map(|(a, b)| a.conj() * b).sum();
            assert!((overlap.norm() - 1.0).abs() < 1e-12);
        }
        assert_spectrum_ok(&x, &spec);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(
            hermitian_eigensystem(&m),
            Err(Error::NonHermitianInput(_))
        ));
    }

    #[test]
    fn random_hermitian_spectra() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &n in &[2, 3, 4, 8, 16, 32] {
            let m = random_hermitian(n, &mut rng);
            let spec = hermitian_eigensystem(&m).unwrap();
            assert_spectrum_ok(&m, &spec);
            let sum: f64 = spec.eigenvalues.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
        }
    }

    #[test]
    fn unitary_conjugation_preserves_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for &n in &[2, 4, 8] {
            let m = random_hermitian(n, &mut rng);
            let u = random_unitary(n, &mut rng);
            let conj = &(&u * &m) * &u.adjoint();
            let a = hermitian_eigensystem(&m).unwrap().eigenvalues;
            let b = hermitian_eigensystem(&conj).unwrap().eigenvalues;
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = random_hermitian(8, &mut rng);
        let a = hermitian_eigensystem(&m).unwrap();
        let b = hermitian_eigensystem(&m).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.eigenvectors, b.eigenvectors);
    }

    #[test]
    fn sqrt_examples() {
        let id = ComplexMatrix::identity(3);
        assert!(psd_sqrt(&id).unwrap().max_abs_diff(&id) < 1e-14);

        let d = psd_sqrt(&ComplexMatrix::from_diag(&[4.0, 9.0])).unwrap();
        assert!(d.max_abs_diff(&ComplexMatrix::from_diag(&[2.0, 3.0])) < 1e-14);

        let proj = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!(psd_sqrt(&proj).unwrap().max_abs_diff(&proj) < 1e-12);
    }

    #[test]
    fn sqrt_rejects_negative() {
        let m = ComplexMatrix::from_diag(&[1.0, -1e-3]);
        assert!(matches!(psd_sqrt(&m), Err(Error::NegativeEigenvalue(_))));
        // round-off negatives are clamped
        let m = ComplexMatrix::from_diag(&[1.0, -1e-12]);
        assert!(psd_sqrt(&m).is_ok());
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for &n in &[2, 4, 8, 16] {
            let rho = random_density(n, &mut rng);
            let r = psd_sqrt(&rho).unwrap();
            assert!((&r * &r).max_abs_diff(&rho) <= 1e-9);
            assert!(r.is_hermitian(1e-12));
        }
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));

        let p0 = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_diag(&[0.0, 1.0]);
        assert_eq!(
            kron(&p0, &p1).unwrap(),
            ComplexMatrix::from_diag(&[0.0, 1.0, 0.0, 0.0])
        );

        let [_, _, z] = pauli();
        assert_eq!(
            kron(&z, &z).unwrap(),
            ComplexMatrix::from_diag(&[1.0, -1.0, -1.0, 1.0])
        );
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let (a, b, cm, d) = (
            random_hermitian(2, &mut rng),
            random_hermitian(4, &mut rng),
            random_unitary(2, &mut rng),
            random_unitary(4, &mut rng),
        );
        let lhs = &kron(&a, &b).unwrap() * &kron(&cm, &d).unwrap();
        let rhs = kron(&(&a * &cm), &(&b * &d)).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_overflow() {
        let a = ComplexMatrix::identity(16);
        assert!(matches!(
            kron(&a, &ComplexMatrix::identity(8)),
            Err(Error::DimensionOverflow(128))
        ));
    }

    #[test]
    fn singular_values_match_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let u = random_unitary(8, &mut rng);
        // rank-3 matrix with known singular values
        let want = [0.8, 0.5, 0.2];
        let cols: Vec<Vec<Complex64>> = (0..3)
            .map(|k| u.column(k).iter().map(|z| z * want[k]).collect())
            .collect();
        let v = random_unitary(3, &mut rng);
        // mix the columns with a unitary so they are not orthogonal
        let mixed: Vec<Vec<Complex64>> = (0..3)
            .map(|j| {
                (0..8)
                    .map(|row| (0..3).map(|k| cols[k][row] * v[(k, j)]).sum())
                    .collect()
            })
            .collect();
        let sv = singular_values_of_columns(mixed).unwrap();
        for (a, b) in sv.iter().zip(want.iter()) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn singular_values_of_rank_one_are_tiny() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let u = random_unitary(4, &mut rng);
        let w = random_unitary(2, &mut rng);
        let cols: Vec<Vec<Complex64>> = (0..2)
            .map(|j| u.column(0).iter().map(|z| z * w[(0, j)]).collect())
            .collect();
        let sv = singular_values_of_columns(cols).unwrap();
        assert!((sv[0] - 1.0).abs() < 1e-14);
        assert!(sv[1] < 1e-14, "{}", sv[1]);
    }
}
