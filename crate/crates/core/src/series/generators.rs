//! Test functions with norm certificates that follow from algebra.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{scalar_matrices, scalar_mul_truncated, MatrixPowerSeries, SchwarzSeries};
use crate::error::invalid;
use crate::Result;

fn check_in_disk(a: Complex64, what: &str) -> Result<()> {
    if !(a.norm() < 1.0) {
        return Err(invalid!("{what} must lie in the open unit disk, got {a}"));
    }
    Ok(())
}

fn mobius_coeffs(alpha: Complex64, degree: usize) -> Vec<Complex64> {
    let k = 1.0 - alpha.norm_sqr();
    let mut out = Vec::with_capacity(degree + 1);
    out.push(alpha);
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 1..=degree {
        out.push(-power * k);
        power *= alpha.conj();
    }
    out
}

/// `(α − z)/(1 − ᾱz)` up to degree `degree`: `a_0 = α`,
/// `a_n = −(1 − |α|²) ᾱ^{n−1}`. Certified `‖f‖_∞ = 1`.
pub fn mobius_series(alpha: Complex64, degree: usize) -> Result<MatrixPowerSeries> {
    check_in_disk(alpha, "Möbius parameter")?;
    let coeffs = scalar_matrices(&mobius_coeffs(alpha, degree))?;
    let s = if alpha == Complex64::new(0.0, 0.0) {
        MatrixPowerSeries::polynomial(coeffs)?
    } else {
        MatrixPowerSeries::truncated(coeffs)?
    };
    s.assume_norm_bound(1.0)
}

/// Finite Blaschke product `Π (a_j − z)/(1 − ā_j z)` up to degree `degree`.
pub fn blaschke_series(zeros: &[Complex64], degree: usize) -> Result<MatrixPowerSeries> {
    let mut acc = vec![Complex64::new(0.0, 0.0); degree + 1];
    acc[0] = Complex64::new(1.0, 0.0);
    let mut exact = true;
    for &a in zeros {
        check_in_disk(a, "Blaschke zero")?;
        if a != Complex64::new(0.0, 0.0) {
            exact = false;
        }
        acc = scalar_mul_truncated(&acc, &mobius_coeffs(a, degree), degree);
    }
    // Only products of pure −z factors are polynomials; they must also fit.
    let exact = exact && zeros.len() <= degree;
    let coeffs = scalar_matrices(&acc)?;
    let s = if exact {
        MatrixPowerSeries::polynomial(coeffs)?
    } else {
        MatrixPowerSeries::truncated(coeffs)?
    };
    s.assume_norm_bound(1.0)
}

/// `f = αI − (1 − |α|²) Σ_{n≥1} ᾱ^{n−1} ψ^n I_d`, i.e. the Möbius map
/// `(α − ψ)/(1 − ᾱψ)` times `I_d`, up to degree `degree`. The sum over `n`
/// stops at `degree` since `ψ^n` has valuation at least `n`.
pub fn subordinate_operator_function(
    alpha: Complex64,
    psi: &SchwarzSeries,
    d: usize,
    degree: usize,
) -> Result<MatrixPowerSeries> {
    check_in_disk(alpha, "subordination parameter")?;
    if d == 0 {
        return Err(invalid!("matrix dimension must be at least 1"));
    }
    let psi = psi.series();
    let degree = if psi.is_polynomial() {
        degree
    } else {
        degree.min(psi.degree())
    };
    let psi_coeffs: Vec<Complex64> = (0..=degree).map(|n| psi.scalar_coeff(n)).collect();
    let k = 1.0 - alpha.norm_sqr();

    let mut out = vec![Complex64::new(0.0, 0.0); degree + 1];
    out[0] = alpha;
    let mut power = psi_coeffs.clone();
    let mut weight = Complex64::new(1.0, 0.0);
    for _ in 1..=degree {
        for (o, p) in out.iter_mut().zip(&power) {
            *o -= weight * k * p;
        }
        weight *= alpha.conj();
        power = scalar_mul_truncated(&power, &psi_coeffs, degree);
    }

    let terminates =
        alpha == Complex64::new(0.0, 0.0) && psi.is_polynomial() && psi.degree() <= degree;
    let scalar = if terminates {
        MatrixPowerSeries::polynomial(scalar_matrices(&out)?)?
    } else {
        MatrixPowerSeries::truncated(scalar_matrices(&out)?)?
    };
    scalar.assume_norm_bound(1.0)?.tensor_identity(d)
}
