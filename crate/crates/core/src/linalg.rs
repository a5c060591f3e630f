//! Dense real/complex vectors and matrices.
//!
//! Entries are always stored as [`Scalar`] (a `Complex64`). The [`Field`] tag
//! is derived from the entries: a value is real-tagged exactly when every
//! imaginary part is zero, so a tag can never disagree with the data.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Float;

use crate::error::LinalgError;

/// A single entry `x + yi`.
pub type Scalar = Complex64;

/// Default tolerance for every class predicate.
pub const DEFAULT_EPS: f64 = 1e-9;

pub(crate) const ZERO: Scalar = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Scalar = Complex64::new(1.0, 0.0);

#[inline]
pub fn real(x: f64) -> Scalar {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

fn field_of(entries: &[Scalar]) -> Field {
    if entries.iter().all(|z| z.im == 0.0) {
        Field::Real
    } else {
        Field::Complex
    }
}

fn check_finite(entries: &[Scalar]) -> Result<(), LinalgError> {
    if entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(LinalgError::NonFinite)
    }
}

/// A column vector of scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if entries.is_empty() {
            return Err(LinalgError::Empty);
        }
        check_finite(&entries)?;
        Ok(Vector { entries })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self, LinalgError> {
        Self::new(entries.iter().copied().map(real).collect())
    }

    /// The `index`-th standard basis vector of length `len`.
    pub fn basis(len: usize, index: usize) -> Result<Self, LinalgError> {
        if index >= len {
            return Err(LinalgError::IndexOutOfRange { index, len });
        }
        let mut entries = vec![ZERO; len];
        entries[index] = ONE;
        Ok(Vector { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn field(&self) -> Field {
        field_of(&self.entries)
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }
}

/// Sum of absolute values. Only defined for real vectors.
pub fn l1_norm(v: &Vector) -> Result<f64, LinalgError> {
    l1_norm_of(v.entries())
}

pub(crate) fn l1_norm_of(entries: &[Scalar]) -> Result<f64, LinalgError> {
    if field_of(entries) != Field::Real {
        return Err(LinalgError::FieldMismatch { expected: Field::Real });
    }
    Ok(entries.iter().map(|z| z.re.abs()).sum())
}

/// Euclidean (Hermitean) norm, using the complex modulus.
pub fn l2_norm(v: &Vector) -> f64 {
    l2_norm_of(v.entries())
}

pub(crate) fn l2_norm_of(entries: &[Scalar]) -> f64 {
    Float::sqrt(entries.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// `Σ conj(u_i) v_i`.
pub fn hermitean_inner(u: &Vector, v: &Vector) -> Result<Scalar, LinalgError> {
    if u.len() != v.len() {
        return Err(LinalgError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(inner_of(u.entries(), v.entries()))
}

pub(crate) fn inner_of(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        check_finite(&entries)?;
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self, LinalgError> {
        Self::new(rows, cols, entries.iter().copied().map(real).collect())
    }

    /// Builds a matrix from nested rows. Every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(LinalgError::RaggedRows {
                expected: ncols,
                got: bad.len(),
            });
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![ONE; dim.max(1)])
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let dim = diag.len();
        let mut entries = vec![ZERO; dim * dim];
        for (i, d) in diag.iter().enumerate() {
            entries[i * dim + i] = *d;
        }
        Matrix {
            rows: dim,
            cols: dim,
            entries,
        }
    }

    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
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

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn field(&self) -> Field {
        field_of(&self.entries)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, s: Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// Matrix-vector product over raw entries.
    pub fn apply(&self, v: &Vector) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        let out = (0..self.rows).map(|i| inner_plain(self.row(i), v.entries())).collect();
        Ok(Vector { entries: out })
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Matrix) -> Result<f64, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(max_dev(&self.entries, &other.entries))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

fn inner_plain(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn max_dev(a: &[Scalar], b: &[Scalar]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    if a.cols != b.rows {
        return Err(LinalgError::DimensionMismatch {
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a[(i, k)];
            if aik == ZERO {
                continue;
            }
            for j in 0..b.cols {
                out[(i, j)] += aik * b[(k, j)];
            }
        }
    }
    Ok(out)
}

/// Conjugate transpose.
pub fn adjoint(m: &Matrix) -> Matrix {
    let mut out = m.transpose();
    out.entries.iter_mut().for_each(|z| *z = z.conj());
    out
}

pub fn is_columnwise_stochastic(m: &Matrix, eps: f64) -> Result<bool, LinalgError> {
    require_real(m)?;
    let nonneg = m.entries.iter().all(|z| z.re >= -eps);
    let sums_to_one = (0..m.cols).all(|j| {
        let sum: f64 = (0..m.rows).map(|i| m[(i, j)].re).sum();
        (sum - 1.0).abs() <= eps
    });
    Ok(nonneg && sums_to_one)
}

pub fn is_orthogonal(m: &Matrix, eps: f64) -> Result<bool, LinalgError> {
    require_real(m)?;
    require_square(m)?;
    let t = m.transpose();
    Ok(close_to_identity(&matmul(m, &t)?, eps) && close_to_identity(&matmul(&t, m)?, eps))
}

pub fn is_unitary(m: &Matrix, eps: f64) -> Result<bool, LinalgError> {
    require_square(m)?;
    let a = adjoint(m);
    Ok(close_to_identity(&matmul(m, &a)?, eps) && close_to_identity(&matmul(&a, m)?, eps))
}

/// True iff every row and column holds exactly one entry near 1 and zeros elsewhere.
pub fn is_permutation(m: &Matrix, eps: f64) -> Result<bool, LinalgError> {
    require_real(m)?;
    require_square(m)?;
    let near = |z: Scalar, target: f64| (z.re - target).abs() <= eps;
    if !m.entries.iter().all(|&z| near(z, 0.0) || near(z, 1.0)) {
        return Ok(false);
    }
    let rows_ok = (0..m.rows).all(|i| m.row(i).iter().filter(|&&z| near(z, 1.0)).count() == 1);
    let cols_ok = (0..m.cols).all(|j| (0..m.rows).filter(|&i| near(m[(i, j)], 1.0)).count() == 1);
    Ok(rows_ok && cols_ok)
}

/// Replaces each entry `x + yi` by the real block `[[x, -y], [y, x]]`.
///
/// Entry `(i, j)` lands on rows `2i, 2i+1` and columns `2j, 2j+1`, so the
/// imaginary dimension is the least significant index bit.
pub fn rho_embed(m: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(2 * m.rows, 2 * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let z = m[(i, j)];
            out[(2 * i, 2 * j)] = real(z.re);
            out[(2 * i, 2 * j + 1)] = real(0.0 - z.im);
            out[(2 * i + 1, 2 * j)] = real(z.im);
            out[(2 * i + 1, 2 * j + 1)] = real(z.re);
        }
    }
    out
}

fn close_to_identity(m: &Matrix, eps: f64) -> bool {
    (0..m.rows).all(|i| {
        (0..m.cols).all(|j| {
            let target = if i == j { ONE } else { ZERO };
            (m[(i, j)] - target).norm() <= eps
        })
    })
}

fn require_real(m: &Matrix) -> Result<(), LinalgError> {
    if m.field() == Field::Real {
        Ok(())
    } else {
        Err(LinalgError::FieldMismatch { expected: Field::Real })
    }
}

fn require_square(m: &Matrix) -> Result<(), LinalgError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        })
    }
}
