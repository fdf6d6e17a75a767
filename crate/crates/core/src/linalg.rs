//! Small dense complex linear algebra.
//!
//! Everything here works on square matrices of dimension 2 or 4 in practice,
//! stored row-major as [`Complex64`] values. Only the handful of operations
//! the simulator needs are provided: products, adjoints, Kronecker products,
//! the two-qubit partial trace and a Hermitian eigenvalue solver.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance used when validating density matrices (Hermiticity, trace and
/// positivity).
pub const STATE_TOL: f64 = 1e-10;

/// Eigenvalues in `[-NEGATIVE_CLAMP, 0)` are treated as exact zeros before
/// entropies are evaluated.
pub const NEGATIVE_CLAMP: f64 = 1e-10;

const JACOBI_THRESHOLD: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry count {found} does not match dimension {dim} (expected {})", dim * dim)]
    MalformedEntries { dim: usize, found: usize },
    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("trace {trace} differs from 1")]
    TraceNotOne { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(LinalgError::MalformedEntries {
                dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix with only real entries, given row by row.
    ///
    /// Panics if the rows do not form a square matrix.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Outer product `|v><v|`.
    pub fn projector(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `A B A^dagger`.
    pub fn conjugate_by(&self, a: &ComplexMatrix) -> Self {
        &(a * self) * &a.adjoint()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(M + M^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    pub fn commutator(&self, other: &ComplexMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    fn check_same_dim(&self, other: &ComplexMatrix) {
        assert_eq!(
            self.dim, other.dim,
            "matrix dimensions differ: {} vs {}",
            self.dim, other.dim
        );
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})[", self.dim, self.dim)?;
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

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Kronecker product `A ⊗ B` with the first factor as the leading (block)
/// index: `out[(i*dB + k, j*dB + l)] = A[i,j] * B[k,l]`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(da * db);
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
    out
}

/// Which qubit of a two-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    /// Leading tensor factor (Alice's qubit).
    First,
    /// Trailing tensor factor (Bob's qubit).
    Second,
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `matrix` against [`STATE_TOL`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self, LinalgError> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > STATE_TOL {
            return Err(LinalgError::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(LinalgError::TraceNotOne { trace: trace.re });
        }
        let eigenvalues = hermitian_eigenvalues(&matrix)?;
        let min_eigenvalue = eigenvalues.last().copied().unwrap_or(0.0);
        if min_eigenvalue < -STATE_TOL {
            return Err(LinalgError::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix that is a density matrix by construction (for example
    /// the image of a valid state under a unitary or a complete Kraus set).
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermiticity_deviation() < 1e-8);
        debug_assert!((matrix.trace().re - 1.0).abs() < 1e-8);
        Self { matrix }
    }

    /// `|v><v|` for a normalized state vector.
    pub fn pure(v: &[Complex64]) -> Result<Self, LinalgError> {
        Self::new(ComplexMatrix::projector(v))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Real diagonal entry `<i|rho|i>`.
    pub fn population(&self, i: usize) -> f64 {
        self.matrix[(i, i)].re
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, LinalgError> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// `rho_A ⊗ rho_B`.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: tensor_product(&self.matrix, &other.matrix),
        }
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix {:?}", self.matrix)
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Reduced state of one qubit of a two-qubit state.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix, LinalgError> {
    let m = &rho.matrix;
    if m.dim != 4 {
        return Err(LinalgError::DimensionMismatch {
            expected: 4,
            found: m.dim,
        });
    }
    let reduced = ComplexMatrix::from_fn(2, |i, j| match keep {
        Subsystem::First => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
        Subsystem::Second => m[(i, j)] + m[(2 + i, 2 + j)],
    });
    Ok(DensityMatrix { matrix: reduced })
}

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
///
/// The input is symmetrized as `(M + M^dagger)/2` first. Dimension 2 uses the
/// closed form; anything larger goes through cyclic Jacobi rotations on the
/// real symmetric embedding `[[Re M, -Im M], [Im M, Re M]]`, whose spectrum is
/// that of `M` with every eigenvalue doubled.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    let deviation = m.hermiticity_deviation();
    if deviation > STATE_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let h = m.hermitian_part();
    match h.dim {
        1 => Ok(vec![h[(0, 0)].re]),
        2 => {
            let a = h[(0, 0)].re;
            let d = h[(1, 1)].re;
            let mean = 0.5 * (a + d);
            let half_gap = (0.25 * (a - d) * (a - d) + h[(0, 1)].norm_sqr()).sqrt();
            Ok(vec![mean + half_gap, mean - half_gap])
        }
        n => {
            let mut embedded = vec![0.0; 4 * n * n];
            let size = 2 * n;
            for i in 0..n {
                for j in 0..n {
                    let z = h[(i, j)];
                    embedded[i * size + j] = z.re;
                    embedded[(i + n) * size + (j + n)] = z.re;
                    embedded[i * size + (j + n)] = -z.im;
                    embedded[(i + n) * size + j] = z.im;
                }
            }
            let mut doubled = jacobi_symmetric_eigenvalues(&mut embedded, size)?;
            doubled.sort_by(|a, b| b.total_cmp(a));
            // each eigenvalue appears twice; average the pair
            Ok(doubled
                .chunks_exact(2)
                .map(|pair| 0.5 * (pair[0] + pair[1]))
                .collect())
        }
    }
}

/// Cyclic Jacobi on a real symmetric `n x n` matrix (row-major, overwritten).
fn jacobi_symmetric_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>, LinalgError> {
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(a) <= JACOBI_THRESHOLD * scale {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                // signum(0.0) is 1.0, so tau == 0 gives the 45 degree rotation
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let off = off_norm(a);
    if off <= JACOBI_THRESHOLD * scale {
        Ok((0..n).map(|i| a[i * n + i]).collect())
    } else {
        Err(LinalgError::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off_norm: off,
        })
    }
}
