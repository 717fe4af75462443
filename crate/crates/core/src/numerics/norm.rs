//! Operator (spectral) norm by power iteration on `A*A`.
//!
//! The first pass starts from the normalized all-ones vector. Its Rayleigh
//! quotient can settle on a non-dominant eigenvalue when the start has no
//! component along the top singular vector, so a second pass always runs
//! from a fixed generic vector, restricted to the orthogonal complement of
//! the first converged vector. The norm is the larger of the two.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::invalid;
use crate::math::{cis, sqrt};
use crate::{Error, Result};

pub const DEFAULT_NORM_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

/// Largest singular value of `a` within absolute error `tol`.
pub fn operator_norm(a: &ComplexMatrix, tol: f64) -> Result<f64> {
    operator_norm_with_cap(a, tol, DEFAULT_MAX_ITERATIONS)
}

/// [`operator_norm`] with an explicit per-pass iteration cap.
pub fn operator_norm_with_cap(a: &ComplexMatrix, tol: f64, max_iterations: usize) -> Result<f64> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(invalid!(
            "operator norm tolerance must be positive, got {tol}"
        ));
    }
    if max_iterations == 0 {
        return Err(invalid!("iteration cap must be positive"));
    }
    let d = a.dim();
    if d == 1 {
        return Ok(a.get(0, 0).norm());
    }
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok(0.0);
    }
    // σ_max / ‖A‖_F lies in [1/√d, 1], so the stagnation threshold can be
    // expressed relative to the scaled matrix.
    let scaled = a.scale(Complex64::new(1.0 / scale, 0.0));
    let theta_tol = (1e-3 * tol / scale).max(4.0 * f64::EPSILON);

    let ones = vec![Complex64::new(1.0 / sqrt(d as f64), 0.0); d];
    let first = power_pass(&scaled, ones, None, theta_tol, max_iterations)?;

    let mut restart: Vec<Complex64> = (0..d)
        .map(|k| {
            cis(0.7548776662466927 * (k as f64 + 1.0) * (k as f64 + 2.0)) * (1.0 + 0.5 * k as f64)
        })
        .collect();
    project_out(&mut restart, &first.vector);
    let second = if normalize(&mut restart) > 1e-8 {
        power_pass(
            &scaled,
            restart,
            Some(&first.vector),
            theta_tol,
            max_iterations,
        )?
        .sigma
    } else {
        0.0
    };
    Ok(scale * first.sigma.max(second))
}

struct Pass {
    sigma: f64,
    vector: Vec<Complex64>,
}

fn power_pass(
    a: &ComplexMatrix,
    mut v: Vec<Complex64>,
    deflate: Option<&[Complex64]>,
    theta_tol: f64,
    max_iterations: usize,
) -> Result<Pass> {
    let d = a.dim();
    let mut y = vec![Complex64::new(0.0, 0.0); d];
    let mut w = vec![Complex64::new(0.0, 0.0); d];
    let mut theta_prev = f64::NEG_INFINITY;
    let mut sigma = 0.0;
    for _ in 0..max_iterations {
        a.mul_vec(&v, &mut y);
        let theta: f64 = y.iter().map(|z| z.norm_sqr()).sum();
        sigma = sqrt(theta);
        a.adjoint_mul_vec(&y, &mut w);
        if let Some(u) = deflate {
            project_out(&mut w, u);
        }
        let delta = theta - theta_prev;
        // The Rayleigh quotient of a PSD power iteration is nondecreasing; a
        // drop means it has reached the roundoff floor.
        if delta.abs() <= theta_tol || (delta < 0.0 && -delta <= 64.0 * f64::EPSILON) {
            return Ok(Pass { sigma, vector: v });
        }
        theta_prev = theta;
        if normalize(&mut w) == 0.0 {
            // v lies in the kernel (of the deflated operator).
            return Ok(Pass { sigma, vector: v });
        }
        core::mem::swap(&mut v, &mut w);
    }
    Err(Error::NotConverged {
        iterations: max_iterations,
        last_estimate: sigma,
    })
}

fn project_out(v: &mut [Complex64], u: &[Complex64]) {
    let coef: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
    for (x, e) in v.iter_mut().zip(u) {
        *x -= coef * e;
    }
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let n = sqrt(v.iter().map(|z| z.norm_sqr()).sum());
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
    n
}
