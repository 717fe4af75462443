//! Truncated power series `Σ A_n z^n` with `d × d` complex coefficients.
//!
//! A series is either an exact polynomial or a truncation of an infinite
//! series whose coefficients are known exactly up to the stored degree.
//! Operations propagate that distinction: a result coefficient is only kept
//! when every coefficient it depends on is known.
//!
//! `norm_bound`, when present, certifies `sup_{|z|<1} ‖f(z)‖ ≤ norm_bound`
//! for the represented function.

mod boundary;
pub mod family;
mod generators;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::invalid;
use crate::math::{cis, cpowi};
use crate::numerics::{operator_norm, ComplexMatrix};
use crate::{Error, Result};

pub use boundary::{BoundarySup, DEFAULT_BOUNDARY_GRID};
pub use generators::{blaschke_series, mobius_series, subordinate_operator_function};

pub const DEFAULT_DEGREE: usize = 64;

/// A certified bound up to `1 + UNIT_BOUND_SLACK` counts as a unit bound;
/// operator norms of exactly unitary data can land an ulp above 1.
pub const UNIT_BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPowerSeries {
    dim: usize,
    coeffs: Vec<ComplexMatrix>,
    norm_bound: Option<f64>,
    polynomial: bool,
}

fn zero_c() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl MatrixPowerSeries {
    /// An exact polynomial with the given coefficients and no norm
    /// certificate.
    pub fn polynomial(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        Self::build(coeffs, true)
    }

    /// The first `coeffs.len()` coefficients of an infinite series.
    pub fn truncated(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        Self::build(coeffs, false)
    }

    fn build(coeffs: Vec<ComplexMatrix>, polynomial: bool) -> Result<Self> {
        let dim = match coeffs.first() {
            Some(c) => c.dim(),
            None => return Err(invalid!("a series needs at least one coefficient")),
        };
        if let Some(bad) = coeffs.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self {
            dim,
            coeffs,
            norm_bound: None,
            polynomial,
        })
    }

    /// Scalar polynomial from its coefficients.
    pub fn scalar_polynomial(coeffs: &[Complex64]) -> Result<Self> {
        Self::polynomial(scalar_matrices(coeffs)?)
    }

    /// Scalar polynomial with real coefficients.
    pub fn real_polynomial(coeffs: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::scalar_polynomial(&c)
    }

    /// The constant function `A_0`, certified with `‖A_0‖`.
    pub fn constant(a0: ComplexMatrix) -> Result<Self> {
        let bound = operator_norm(&a0, crate::numerics::DEFAULT_NORM_TOL)?;
        let mut s = Self::polynomial(vec![a0])?;
        s.norm_bound = Some(bound);
        Ok(s)
    }

    /// `c z^k I_dim`, certified with `|c|`.
    pub fn monomial(dim: usize, k: usize, c: Complex64) -> Result<Self> {
        let mut coeffs = vec![ComplexMatrix::zeros(dim)?; k + 1];
        coeffs[k] = ComplexMatrix::scalar(dim, c)?;
        let mut s = Self::polynomial(coeffs)?;
        s.norm_bound = Some(c.norm());
        Ok(s)
    }

    /// Attaches a sup-norm bound the caller has established by other means.
    pub fn assume_norm_bound(mut self, bound: f64) -> Result<Self> {
        if !(bound >= 0.0) || !bound.is_finite() {
            return Err(invalid!(
                "norm bound must be finite and nonnegative, got {bound}"
            ));
        }
        self.norm_bound = Some(bound);
        Ok(self)
    }

    pub fn without_norm_bound(mut self) -> Self {
        self.norm_bound = None;
        self
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    /// Coefficient `n`; zero beyond the degree of a polynomial.
    pub fn coeff(&self, n: usize) -> Option<ComplexMatrix> {
        match self.coeffs.get(n) {
            Some(c) => Some(c.clone()),
            None if self.polynomial => ComplexMatrix::zeros(self.dim).ok(),
            None => None,
        }
    }

    #[inline]
    pub fn norm_bound(&self) -> Option<f64> {
        self.norm_bound
    }

    #[inline]
    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    /// True when the series carries a certificate `‖f‖_∞ ≤ 1`.
    pub fn is_certified_unit(&self) -> bool {
        matches!(self.norm_bound, Some(b) if b <= 1.0 + UNIT_BOUND_SLACK)
    }

    /// Scalar coefficient `n` of a `1 × 1` series.
    pub fn scalar_coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).map_or(zero_c(), |c| c.get(0, 0))
    }

    /// Highest degree that is still known exactly when this series is
    /// combined with others; `None` for polynomials.
    fn known_degree(&self) -> Option<usize> {
        (!self.polynomial).then(|| self.degree())
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

    /// Horner evaluation of the stored coefficients at `z`.
    pub fn evaluate(&self, z: Complex64) -> ComplexMatrix {
        let mut acc = self.coeffs[self.degree()].clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale(z);
            acc.add_scaled(c, Complex64::new(1.0, 0.0));
        }
        acc
    }

    /// Operator norms `‖A_0‖, …, ‖A_D‖`.
    pub fn coefficient_norms(&self, tol: f64) -> Result<Vec<f64>> {
        self.coeffs.iter().map(|c| operator_norm(c, tol)).collect()
    }

    /// Majorant series `M_r(f) = Σ ‖A_n‖ r^n` over the stored coefficients.
    pub fn majorant(&self, r: f64) -> Result<f64> {
        self.majorant_with_tol(r, crate::numerics::DEFAULT_NORM_TOL)
    }

    pub fn majorant_with_tol(&self, r: f64, tol: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&r) {
            return Err(invalid!("majorant radius must lie in [0, 1], got {r}"));
        }
        let norms = self.coefficient_norms(tol)?;
        Ok(norms.iter().rev().fold(0.0, |acc, &n| acc * r + n))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let cap = min_opt(self.known_degree(), other.known_degree());
        let full = self.degree().max(other.degree());
        let degree = cap.map_or(full, |c| c.min(full));
        let mut coeffs = Vec::with_capacity(degree + 1);
        for n in 0..=degree {
            let mut c = self.coeff(n).expect("within known degree");
            c.add_scaled(
                &other.coeff(n).expect("within known degree"),
                Complex64::new(1.0, 0.0),
            );
            coeffs.push(c);
        }
        Ok(Self {
            dim: self.dim,
            coeffs,
            norm_bound: self.norm_bound.zip(other.norm_bound).map(|(a, b)| a + b),
            polynomial: cap.is_none(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|m| m.scale(c)).collect(),
            norm_bound: self.norm_bound.map(|b| b * c.norm()),
            polynomial: self.polynomial,
        }
    }

    /// `z^k f(z)`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![ComplexMatrix::zeros(self.dim).expect("dim >= 1"); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self {
            dim: self.dim,
            coeffs,
            norm_bound: self.norm_bound,
            polynomial: self.polynomial,
        }
    }

    /// Cauchy product `C_n = Σ_{k≤n} A_k B_{n−k}`, kept up to degree
    /// `d_out` (or less, when a truncated factor does not determine the
    /// higher coefficients).
    pub fn cauchy_product(&self, other: &Self, d_out: usize) -> Result<Self> {
        self.check_dim(other)?;
        let cap = min_opt(self.known_degree(), other.known_degree());
        let full = self.degree() + other.degree();
        let degree = cap.map_or(d_out, |c| c.min(d_out));
        let mut coeffs = vec![ComplexMatrix::zeros(self.dim)?; degree + 1];
        let mut dropped_nonzero = false;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let n = i + j;
                if n > degree {
                    dropped_nonzero = true;
                    break;
                }
                let prod = a.mul(b)?;
                coeffs[n].add_scaled(&prod, Complex64::new(1.0, 0.0));
            }
        }
        let polynomial = cap.is_none() && (!dropped_nonzero || full <= degree);
        Ok(Self {
            dim: self.dim,
            coeffs,
            norm_bound: self.norm_bound.zip(other.norm_bound).map(|(a, b)| a * b),
            polynomial,
        })
    }

    /// `g ∘ φ` kept up to degree `d_out`. Exact for every retained degree
    /// because `φ(0) = 0`: coefficient `n` needs only `g_0..g_n` and
    /// `φ_1..φ_n`.
    pub fn compose(&self, phi: &SchwarzSeries, d_out: usize) -> Result<Self> {
        let phi = phi.series();
        let cap = min_opt(self.known_degree(), phi.known_degree());
        let degree = cap.map_or(d_out, |c| c.min(d_out));
        let phi_coeffs: Vec<Complex64> = (0..=degree).map(|n| phi.scalar_coeff(n)).collect();

        let mut out = vec![ComplexMatrix::zeros(self.dim)?; degree + 1];
        // power[k] = coefficient k of φ^n, starting with φ^0 = 1.
        let mut power = vec![zero_c(); degree + 1];
        power[0] = Complex64::new(1.0, 0.0);
        for n in 0..=self.degree().min(degree) {
            let g_n = &self.coeffs[n];
            if !g_n.is_zero() {
                for (k, &p) in power.iter().enumerate().skip(n) {
                    if p != zero_c() {
                        out[k].add_scaled(g_n, p);
                    }
                }
            }
            power = scalar_mul_truncated(&power, &phi_coeffs, degree);
        }

        let full_degree = self.degree().saturating_mul(phi.degree());
        let polynomial = cap.is_none() && (self.degree() == 0 || full_degree <= degree);
        Ok(Self {
            dim: self.dim,
            coeffs: out,
            norm_bound: self.norm_bound,
            polynomial,
        })
    }

    /// `(1/n) Σ_j f(ξ^j z)` with `ξ = e^{2πi/n}`: keeps the coefficients
    /// whose index is a multiple of `n` and zeroes the rest.
    pub fn rotation_average(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid!("rotation order must be at least 1"));
        }
        let zero = ComplexMatrix::zeros(self.dim)?;
        Ok(Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % n == 0 { c.clone() } else { zero.clone() })
                .collect(),
            norm_bound: self.norm_bound,
            polynomial: self.polynomial,
        })
    }

    /// Coefficients of `f(z e^{it})`: `A_n e^{int}`.
    pub fn rotate_coefficients(&self, t: f64) -> Self {
        let w = cis(t);
        Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.scale(cpowi(w, n)))
                .collect(),
            norm_bound: self.norm_bound,
            polynomial: self.polynomial,
        }
    }

    /// Tensor a scalar series with `I_d`.
    pub fn tensor_identity(&self, d: usize) -> Result<Self> {
        if self.dim != 1 {
            return Err(invalid!(
                "only scalar series can be tensored with the identity"
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ComplexMatrix::scalar(d, c.get(0, 0)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: d,
            coeffs,
            norm_bound: self.norm_bound,
            polynomial: self.polynomial,
        })
    }
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub(crate) fn scalar_matrices(coeffs: &[Complex64]) -> Result<Vec<ComplexMatrix>> {
    if coeffs.is_empty() {
        return Err(invalid!("a series needs at least one coefficient"));
    }
    coeffs
        .iter()
        .map(|&c| ComplexMatrix::from_entries(1, vec![c]))
        .collect()
}

/// Scalar Cauchy product truncated at `degree`.
pub(crate) fn scalar_mul_truncated(
    a: &[Complex64],
    b: &[Complex64],
    degree: usize,
) -> Vec<Complex64> {
    let mut out = vec![zero_c(); degree + 1];
    for (i, &x) in a.iter().enumerate().take(degree + 1) {
        if x == zero_c() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(degree + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// A scalar Schwarz function: `φ(0) = 0` and `‖φ‖_∞ ≤ 1`, certified.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzSeries(MatrixPowerSeries);

impl SchwarzSeries {
    pub fn new(series: MatrixPowerSeries) -> Result<Self> {
        if series.dim() != 1 {
            return Err(invalid!("a Schwarz series must be scalar"));
        }
        if series.scalar_coeff(0) != zero_c() {
            return Err(invalid!("a Schwarz series must vanish at the origin"));
        }
        match series.norm_bound() {
            Some(b) if b <= 1.0 + UNIT_BOUND_SLACK => Ok(Self(series)),
            Some(b) => Err(invalid!(
                "a Schwarz series needs sup norm at most 1, certified bound is {b}"
            )),
            None => Err(Error::MissingCertificate),
        }
    }

    /// `φ(z) = z`.
    pub fn identity() -> Self {
        Self::monomial(1)
    }

    /// `φ(z) = z^k`, `k ≥ 1`.
    pub fn monomial(k: usize) -> Self {
        let k = k.max(1);
        Self(MatrixPowerSeries::monomial(1, k, Complex64::new(1.0, 0.0)).expect("valid monomial"))
    }

    /// `φ(z) = z·B(z)` for the Blaschke product `B` with the given zeros,
    /// truncated at `degree`.
    pub fn from_blaschke(zeros: &[Complex64], degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(invalid!("degree must be at least 1"));
        }
        let b = blaschke_series(zeros, degree - 1)?;
        Self::new(b.shift(1))
    }

    pub fn series(&self) -> &MatrixPowerSeries {
        &self.0
    }

    pub fn into_series(self) -> MatrixPowerSeries {
        self.0
    }
}
