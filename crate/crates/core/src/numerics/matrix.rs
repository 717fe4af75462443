use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::invalid;
use crate::{Error, Result};

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

/// The operations of [`ComplexMatrix::apply`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixOp {
    Add,
    Multiply,
    Scale(Complex64),
    Adjoint,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(invalid!("matrix dimension must be at least 1"));
        }
        Ok(Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    /// `c·I` of size `dim`.
    pub fn scalar(dim: usize, c: Complex64) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = c;
        }
        Ok(m)
    }

    /// Builds a matrix from a row-major entry vector of length `dim²`.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(invalid!("matrix dimension must be at least 1"));
        }
        if entries.len() != dim * dim {
            return Err(invalid!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            ));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(invalid!("matrix entries must be finite"));
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from real rows; handy for tests and fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(invalid!("matrix rows must all have length {dim}"));
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_entries(dim, entries)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Dispatches one of the four basic operations. `other` is ignored by the
    /// unary operations.
    pub fn apply(&self, other: &Self, op: MatrixOp) -> Result<Self> {
        match op {
            MatrixOp::Add => self.add(other),
            MatrixOp::Multiply => self.mul(other),
            MatrixOp::Scale(c) => Ok(self.scale(c)),
            MatrixOp::Adjoint => Ok(self.adjoint()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, Complex64::new(1.0, 0.0));
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, Complex64::new(-1.0, 0.0));
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        Ok(Self {
            dim: d,
            entries: out,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * c).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(self.entries[j * d + i].conj());
            }
        }
        Self { dim: d, entries }
    }

    /// `self += c·other`. Dimensions must already agree.
    pub(crate) fn add_scaled(&mut self, other: &Self, c: Complex64) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += *b * c;
        }
    }

    pub(crate) fn mul_vec(&self, v: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.entries[i * d..(i + 1) * d];
            *o = row.iter().zip(v).map(|(a, x)| a * x).sum();
        }
    }

    pub(crate) fn adjoint_mul_vec(&self, v: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for (j, o) in out.iter_mut().enumerate() {
            *o = (0..d).map(|i| self.entries[i * d + j].conj() * v[i]).sum();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Returns `c` when the matrix equals `c·I` up to `tol` entrywise.
    pub fn as_scalar_multiple(&self, tol: f64) -> Option<Complex64> {
        let c = self.entries[0];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expect = if i == j { c } else { Complex64::new(0.0, 0.0) };
                if (self.get(i, j) - expect).norm() > tol {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_norm(&self) -> f64 {
        crate::math::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    f.write_str(", ")?;
                }
                let z = self.get(i, j);
                write!(f, "{}{:+}i", z.re, z.im)?;
            }
        }
        f.write_str("]")
    }
}
