//! Dense complex linear algebra kernel: Kronecker products, matrix
//! exponentials and logarithms, eigendecomposition of unitary matrices, and
//! Gram–Schmidt orthonormalization.
//!
//! Everything here operates on small dense matrices (dimension ≲ 400) stored
//! row-major with `f64` precision. All operations are pure functions.

use num_complex::Complex;
use std::f64::consts::PI;
use std::ops::Mul;

mod jacobi;

pub use jacobi::{hermitian_eigen, singular_values};

/// Complex number type used throughout the crate.
pub type Complex64 = Complex<f64>;

/// Frobenius-residual threshold under which an input is accepted as unitary.
pub const UNITARY_TOL: f64 = 1e-8;

/// Pivot threshold below which Gram–Schmidt reports rank deficiency.
pub const PIVOT_TOL: f64 = 1e-12;

/// Eigenphase gap under which eigenvalues are treated as one degenerate
/// eigenspace and re-orthonormalized.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Errors produced by the linear-algebra kernel.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum LinAlgError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("rank-deficient input: column {col} pivot {pivot:.3e}")]
    RankDeficient { col: usize, pivot: f64 },
    #[error("iteration failed to converge: {0}")]
    NoConvergence(&'static str),
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries. Panics if the length is wrong.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, reals: &[f64]) -> Self {
        assert_eq!(reals.len(), rows * cols);
        Self {
            rows,
            cols,
            entries: reals.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    /// Conjugate transpose A†.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// Matrix product A·B.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product A·v.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length must match cols");
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖A†A − I‖_F; zero for a perfectly unitary matrix.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .sub(&Self::identity(self.cols))
            .frobenius_norm()
    }

    /// Largest entry-wise absolute difference against another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Complex state vector (quNit or 2-quNit amplitudes).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    /// Basis ket |index⟩ of the given dimension.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Kronecker product a ⊗ b; the left factor owns the slow (major) index.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let f = a.get(i1, j1);
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i2 in 0..b.rows() {
                for j2 in 0..b.cols() {
                    out.set(i1 * b.rows() + i2, j1 * b.cols() + j2, f * b.get(i2, j2));
                }
            }
        }
    }
    out
}

/// Matrix exponential by scaling-and-squaring with a truncated Taylor series.
///
/// Accurate to well below 1e−10 at the small dimensions used here; for
/// skew-Hermitian input the result is unitary to the same level.
pub fn matexp(a: &ComplexMatrix) -> Result<ComplexMatrix, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let norm = a.frobenius_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let b = a.scaled(scale);

    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    let mut converged = false;
    for k in 1..=64u32 {
        term = term.matmul(&b).scaled(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.frobenius_norm() <= 1e-18 * sum.frobenius_norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinAlgError::NoConvergence("matexp Taylor series"));
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}

/// Eigendecomposition of a unitary matrix: `u = V · diag(e^{iη}) · V†`.
///
/// Returns the unitary eigenvector matrix `V` and the eigenphases η in the
/// principal branch (−π, π], with −1 mapped to +π, sorted ascending.
/// Eigenvectors within degenerate eigenspaces come out orthonormal, and each
/// column carries a canonical phase so the decomposition is deterministic.
///
/// Works by joint diagonalization of the commuting Hermitian pair
/// H = (u+u†)/2 and K = (u−u†)/(2i): eigenvectors of H are refined inside
/// each eigenvalue cluster (gap ≤ [`CLUSTER_TOL`]) by diagonalizing the
/// restriction of K.
pub fn unitary_eigen(u: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>), LinAlgError> {
    if !u.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let residual = u.unitarity_residual();
    if residual > UNITARY_TOL {
        return Err(LinAlgError::NotUnitary { residual });
    }
    let n = u.rows();
    let ud = u.adjoint();
    let h = u.add(&ud).scaled(Complex64::new(0.5, 0.0));
    let k = u.sub(&ud).scaled(Complex64::new(0.0, -0.5));

    let (mut v, cos_vals) = hermitian_eigen(&h)?;

    // Refine within clusters of (nearly) equal cos-eigenvalues.
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && cos_vals[end] - cos_vals[end - 1] <= CLUSTER_TOL {
            end += 1;
        }
        if end - start > 1 {
            refine_cluster(&mut v, &k, start, end)?;
        }
        start = end;
    }

    // Eigenphases from the diagonal of V†uV.
    let d = v.adjoint().matmul(u).matmul(&v);
    let mut order: Vec<usize> = (0..n).collect();
    let phases: Vec<f64> = (0..n)
        .map(|i| {
            let z = d.get(i, i);
            let mut eta = z.im.atan2(z.re);
            if eta <= -PI {
                eta = PI;
            }
            eta
        })
        .collect();
    order.sort_by(|&a, &b| phases[a].total_cmp(&phases[b]));

    let mut sorted_v = ComplexMatrix::zeros(n, n);
    let mut sorted_phases = Vec::with_capacity(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted_v.set(row, new_col, v.get(row, old_col));
        }
        sorted_phases.push(phases[old_col]);
    }
    canonicalize_columns(&mut sorted_v);

    let lam: Vec<Complex64> = sorted_phases
        .iter()
        .map(|&eta| Complex64::from_polar(1.0, eta))
        .collect();
    let recon = sorted_v
        .matmul(&ComplexMatrix::from_diagonal(&lam))
        .matmul(&sorted_v.adjoint());
    if recon.sub(u).frobenius_norm() > 1e-9 {
        return Err(LinAlgError::NoConvergence("unitary eigendecomposition"));
    }
    Ok((sorted_v, sorted_phases))
}

/// Diagonalize the restriction of `k` to the span of columns start..end of
/// `v` and rotate those columns accordingly.
fn refine_cluster(
    v: &mut ComplexMatrix,
    k: &ComplexMatrix,
    start: usize,
    end: usize,
) -> Result<(), LinAlgError> {
    let n = v.rows();
    let m = end - start;
    let mut sub = ComplexMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            sub.set(i, j, v.get(i, start + j));
        }
    }
    let block = sub.adjoint().matmul(k).matmul(&sub);
    let (q, _) = hermitian_eigen(&block)?;
    let rotated = sub.matmul(&q);
    for i in 0..n {
        for j in 0..m {
            v.set(i, start + j, rotated.get(i, j));
        }
    }
    Ok(())
}

/// Rephase each column so its largest-modulus entry is real positive.
fn canonicalize_columns(v: &mut ComplexMatrix) {
    let n = v.rows();
    for col in 0..v.cols() {
        let mut best = 0;
        let mut best_norm = 0.0;
        for row in 0..n {
            let m = v.get(row, col).norm();
            if m > best_norm {
                best_norm = m;
                best = row;
            }
        }
        if best_norm > 0.0 {
            let z = v.get(best, col);
            let phase = z.conj() / z.norm();
            for row in 0..n {
                let value = v.get(row, col) * phase;
                v.set(row, col, value);
            }
        }
    }
}

/// Principal matrix logarithm of a unitary: Hermitian `H` with exp(iH) = u,
/// eigenphases in (−π, π].
pub fn matlog_unitary(u: &ComplexMatrix) -> Result<ComplexMatrix, LinAlgError> {
    let (v, phases) = unitary_eigen(u)?;
    let diag: Vec<Complex64> = phases.iter().map(|&p| Complex64::new(p, 0.0)).collect();
    Ok(v.matmul(&ComplexMatrix::from_diagonal(&diag)).matmul(&v.adjoint()))
}

/// Modified Gram–Schmidt orthonormalization of the columns, with one
/// re-orthogonalization pass; fails on rank-deficient input.
pub fn gram_schmidt(a: &ComplexMatrix) -> Result<ComplexMatrix, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut r = a.clone();
    for col in 0..n {
        for _pass in 0..2 {
            for prev in 0..col {
                let mut proj = Complex64::new(0.0, 0.0);
                for row in 0..n {
                    proj += r.get(row, prev).conj() * r.get(row, col);
                }
                for row in 0..n {
                    let value = r.get(row, col) - proj * r.get(row, prev);
                    r.set(row, col, value);
                }
            }
        }
        let pivot = (0..n).map(|row| r.get(row, col).norm_sqr()).sum::<f64>().sqrt();
        if pivot <= PIVOT_TOL {
            return Err(LinAlgError::RankDeficient { col, pivot });
        }
        let inv = Complex64::new(1.0 / pivot, 0.0);
        for row in 0..n {
            let value = r.get(row, col) * inv;
            r.set(row, col, value);
        }
    }
    Ok(r)
}
