//! Dense Hermitian linear algebra for the small Hilbert spaces used here
//! (2 and 8 dimensional in practice, capped at 64).
//!
//! Eigenpairs come from a cyclic complex Jacobi iteration. Every rotation is
//! an exact unitary, so the eigenvector matrix stays unitary to rounding and
//! the propagator `V diag(exp(-i lambda dt)) V^dagger` inherits that.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 64;

/// Absolute tolerance for the Hermitian symmetry check.
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-13;
// relative slack used when picking the largest component for the phase convention
const PHASE_TIE_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a `dim x dim` matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::NotSquare { len: data.len() });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::new(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        check_dim(dim)?;
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * dim + i] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    pub fn sigma_x() -> Self {
        Self::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn sigma_y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self::new(2, vec![ZERO, -i, i, ZERO]).unwrap()
    }

    pub fn sigma_z() -> Self {
        Self::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `a * self + b * other`, entrywise.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        self.zip_with(other, |x, y| x * a + y * b)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        same_dim(self.dim, other.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest `|H_ij - conj(H_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
                worst = worst.max(d);
            }
        }
        libm::sqrt(worst)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL
    }

    /// `max |U^dagger U - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let uu = self.adjoint().matmul(self).unwrap();
        uu.max_abs_diff(&Self::identity(self.dim)).unwrap()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.data[row * self.dim + col]
    }
}

/// A pure state in a finite Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { amplitudes })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amplitudes.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            amplitudes: self.amplitudes.iter().map(|z| z / n).collect(),
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn conj(&self) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|z| z.conj()).collect(),
        }
    }
}

/// Eigenvalues in ascending order with the matching eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Column `k` as a state.
    pub fn vector(&self, k: usize) -> StateVector {
        let n = self.dim();
        StateVector {
            amplitudes: (0..n).map(|i| self.vectors.get(i, k)).collect(),
        }
    }

    /// Applies `exp(-i H dt)` to `psi` without forming the propagator matrix.
    pub fn propagate(&self, psi: &StateVector, dt: f64) -> Result<StateVector> {
        let n = self.dim();
        same_dim(n, psi.dim())?;
        let v = self.vectors.as_slice();
        let mut coeffs = vec![ZERO; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = ZERO;
            for i in 0..n {
                acc += v[i * n + k].conj() * psi.amplitudes[i];
            }
            *c = acc * phase_factor(self.values[k], dt);
        }
        let mut out = vec![ZERO; n];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &v[i * n..(i + 1) * n];
            *o = row.iter().zip(&coeffs).map(|(a, b)| a * b).sum();
        }
        Ok(StateVector { amplitudes: out })
    }

    /// `max |H V - V diag(values)|`.
    pub fn residual(&self, h: &ComplexMatrix) -> Result<f64> {
        let hv = h.matmul(&self.vectors)?;
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for k in 0..n {
                let d = hv.get(i, k) - self.vectors.get(i, k) * self.values[k];
                worst = worst.max(d.norm());
            }
        }
        Ok(worst)
    }
}

#[inline]
fn phase_factor(energy: f64, dt: f64) -> Complex64 {
    let (s, c) = libm::sincos(energy * dt);
    Complex64::new(c, -s)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::Empty("matrix dimension"));
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, cap: MAX_DIM });
    }
    Ok(())
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Eigenvalues are sorted ascending (stable with respect to the Jacobi output
/// order for exact ties). Each eigenvector is rephased so that its
/// largest-magnitude component is real and positive, preferring the lowest
/// index among near-equal magnitudes.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<EigenSystem> {
    let n = h.dim;
    check_hermitian(h)?;
    let norm = h.frobenius_norm();
    let (raw, v) = if is_real(h) {
        let a = h.data.iter().map(|z| z.re).collect();
        let v = ComplexMatrix::identity(n).data.iter().map(|z| z.re).collect();
        jacobi_real(a, v, n, norm)?
    } else {
        jacobi_complex(h, norm)?
    };
    Ok(sorted_and_phased(&raw, &v, n))
}

/// Same as [`eig_hermitian`], but starts the sweeps from the eigenvectors of
/// a nearby matrix, which typically halves the work when `h` changes little
/// between calls. Complex input falls back to a cold start.
pub fn eig_hermitian_near(h: &ComplexMatrix, near: &EigenSystem) -> Result<EigenSystem> {
    let n = h.dim;
    same_dim(n, near.dim())?;
    if !(is_real(h) && is_real(&near.vectors)) {
        return eig_hermitian(h);
    }
    check_hermitian(h)?;
    let norm = h.frobenius_norm();
    let mut v0: Vec<f64> = near.vectors.data.iter().map(|z| z.re).collect();
    if !(orthonormalize_columns(&mut v0, n) && orthonormalize_columns(&mut v0, n)) {
        return eig_hermitian(h);
    }
    let hr: Vec<f64> = h.data.iter().map(|z| z.re).collect();
    // a = v0^T h v0
    let mut hv = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let hik = hr[i * n + k];
            for j in 0..n {
                hv[i * n + j] += hik * v0[k * n + j];
            }
        }
    }
    let mut a = vec![0.0; n * n];
    for k in 0..n {
        for i in 0..n {
            let vki = v0[k * n + i];
            for j in 0..n {
                a[i * n + j] += vki * hv[k * n + j];
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let m = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = m;
            a[j * n + i] = m;
        }
    }
    let (raw, v) = jacobi_real(a, v0, n, norm)?;
    Ok(sorted_and_phased(&raw, &v, n))
}

// Modified Gram-Schmidt. Applied twice so chained warm starts cannot drift
// from unitarity.
// False if the columns are far from independent.
fn orthonormalize_columns(v: &mut [f64], n: usize) -> bool {
    for j in 0..n {
        for k in 0..j {
            let dot: f64 = (0..n).map(|i| v[i * n + k] * v[i * n + j]).sum();
            for i in 0..n {
                v[i * n + j] -= dot * v[i * n + k];
            }
        }
        let norm = libm::sqrt((0..n).map(|i| v[i * n + j] * v[i * n + j]).sum());
        if norm.is_nan() || norm <= 0.5 {
            return false;
        }
        for i in 0..n {
            v[i * n + j] /= norm;
        }
    }
    true
}

fn is_real(m: &ComplexMatrix) -> bool {
    m.data.iter().all(|z| z.im == 0.0)
}

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn sorted_and_phased(raw: &[f64], v: &[Complex64], n: usize) -> EigenSystem {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[i].total_cmp(&raw[j]));

    let values = order.iter().map(|&k| raw[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    let mut column = vec![ZERO; n];
    for (col, &k) in order.iter().enumerate() {
        for (i, z) in column.iter_mut().enumerate() {
            *z = v[i * n + k];
        }
        let pivot = phase_pivot(&column);
        let mag = column[pivot].norm();
        let fix = if mag > 0.0 { column[pivot].conj() / mag } else { ONE };
        for (i, z) in column.iter().enumerate() {
            let mut w = z * fix;
            if i == pivot {
                w = Complex64::new(w.norm(), 0.0);
            }
            vectors.data[i * n + col] = w;
        }
    }
    EigenSystem { values, vectors }
}

fn no_convergence(n: usize, norm: f64, off_diagonal: f64) -> Error {
    Error::NoConvergence {
        dim: n,
        norm,
        off_diagonal,
        sweeps: JACOBI_MAX_SWEEPS,
    }
}

// Entries below this are left alone: even if every off-diagonal entry sat
// there, the off-diagonal norm would already be under the stopping tolerance.
fn skip_threshold(tol: f64, n: usize) -> f64 {
    tol / n as f64
}

fn jacobi_complex(h: &ComplexMatrix, norm: f64) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let n = h.dim;
    let mut a = h.data.clone();
    for i in 0..n {
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n).data;
    let tol = JACOBI_REL_TOL * norm;
    let skip = skip_threshold(tol, n);
    let mut sweep = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= tol {
            break;
        }
        if sweep == JACOBI_MAX_SWEEPS {
            return Err(no_convergence(n, norm, off));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                if a[p * n + q].norm_sqr() > skip * skip {
                    rotate(&mut a, &mut v, n, p, q);
                }
            }
        }
        sweep += 1;
    }
    Ok(((0..n).map(|i| a[i * n + i].re).collect(), v))
}

/// Same sweep for matrices with no imaginary part: the phase factor is +-1
/// and the rotations stay real.
fn jacobi_real(mut a: Vec<f64>, mut v: Vec<f64>, n: usize, norm: f64) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let tol = JACOBI_REL_TOL * norm;
    let skip = skip_threshold(tol, n);
    let mut sweep = 0;
    loop {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        let off = libm::sqrt(2.0 * off);
        if off <= tol {
            break;
        }
        if sweep == JACOBI_MAX_SWEEPS {
            return Err(no_convergence(n, norm, off));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                if a[p * n + q].abs() > skip {
                    rotate_real(&mut a, &mut v, n, p, q);
                }
            }
        }
        sweep += 1;
    }
    Ok((
        (0..n).map(|i| a[i * n + i]).collect(),
        v.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
    ))
}

#[inline]
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta >= 0.0 {
        1.0 / (theta + libm::sqrt(theta * theta + 1.0))
    } else {
        -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    (c, t * c)
}

#[inline]
fn rotate_real(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let (c, s) = rotation(a[p * n + p], a[q * n + q], apq);
    let t = s / c;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * n + p];
        let arq = a[r * n + q];
        let new_p = arp * c - arq * s;
        let new_q = arp * s + arq * c;
        a[r * n + p] = new_p;
        a[p * n + r] = new_p;
        a[r * n + q] = new_q;
        a[q * n + r] = new_q;
    }
    a[p * n + p] -= t * apq;
    a[q * n + q] += t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        let vrp = v[r * n + p];
        let vrq = v[r * n + q];
        v[r * n + p] = vrp * c - vrq * s;
        v[r * n + q] = vrp * s + vrq * c;
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    libm::sqrt(sum)
}

/// One Jacobi rotation annihilating `a[p][q]`: `A <- G^dagger A G`, `V <- V G`
/// with `G = diag(1, e^{-i phi}) R(theta)` on the (p, q) plane.
#[inline]
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let b = a[p * n + q];
    let abs_b = libm::hypot(b.re, b.im);
    if abs_b == 0.0 {
        return;
    }
    let phase = b / abs_b;
    let phase_conj = phase.conj();
    let (c, s) = rotation(a[p * n + p].re, a[q * n + q].re, abs_b);

    for r in 0..n {
        let arp = a[r * n + p];
        let arq = a[r * n + q] * phase_conj;
        a[r * n + p] = arp * c - arq * s;
        a[r * n + q] = arp * s + arq * c;
    }
    for r in 0..n {
        let apr = a[p * n + r];
        let aqr = a[q * n + r] * phase;
        a[p * n + r] = apr * c - aqr * s;
        a[q * n + r] = apr * s + aqr * c;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

    for r in 0..n {
        let vrp = v[r * n + p];
        let vrq = v[r * n + q] * phase_conj;
        v[r * n + p] = vrp * c - vrq * s;
        v[r * n + q] = vrp * s + vrq * c;
    }
}

fn phase_pivot(column: &[Complex64]) -> usize {
    let max = column.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    let cutoff = max * (1.0 - PHASE_TIE_TOL) * (1.0 - PHASE_TIE_TOL);
    column.iter().position(|z| z.norm_sqr() >= cutoff).unwrap_or(0)
}

/// `exp(-i H dt)` built from the eigendecomposition of `H`.
pub fn unitary_step(h: &ComplexMatrix, dt: f64) -> Result<ComplexMatrix> {
    if !dt.is_finite() {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
            reason: "must be finite",
        });
    }
    let eig = eig_hermitian(h)?;
    let n = h.dim;
    let v = &eig.vectors.data;
    let phases: Vec<Complex64> = eig.values.iter().map(|&e| phase_factor(e, dt)).collect();
    let mut u = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZERO;
            for k in 0..n {
                acc += v[i * n + k] * phases[k] * v[j * n + k].conj();
            }
            u.data[i * n + j] = acc;
        }
    }
    Ok(u)
}

/// Tensor product `A (x) B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (p, q) = (a.dim, b.dim);
    let dim = p * q;
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, cap: MAX_DIM });
    }
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..p {
        for j in 0..p {
            let aij = a.data[i * p + j];
            for k in 0..q {
                for l in 0..q {
                    out.data[(i * q + k) * dim + j * q + l] = aij * b.data[k * q + l];
                }
            }
        }
    }
    Ok(out)
}

/// Matrix-vector product `U psi`.
pub fn apply(u: &ComplexMatrix, psi: &StateVector) -> Result<StateVector> {
    let n = u.dim;
    same_dim(n, psi.dim())?;
    let amplitudes = (0..n)
        .map(|i| {
            u.data[i * n..(i + 1) * n]
                .iter()
                .zip(&psi.amplitudes)
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    Ok(StateVector { amplitudes })
}
