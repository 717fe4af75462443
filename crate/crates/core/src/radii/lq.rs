//! Unit-ball witnesses in ℓ_q² showing that the order-N radius of `L^q(μ)`
//! vanishes for `1 ≤ p < q`.

use alloc::vec;

use num_complex::Complex64;

use super::convexity::lq_norm;
use super::radius::{radius_from_norms, RadiusEstimate, RadiusKind};
use crate::error::invalid;
use crate::math::powf;
use crate::Result;

/// Radius of `f(z) = (a, (1 − a^q)^{1/q} z)` in ℓ_q², computed from the
/// coefficient norms by bisection. Bounds the space's radius from above.
pub fn lq_witness(p: f64, q: f64, order: usize, a: f64, tol: f64) -> Result<RadiusEstimate> {
    if !(p >= 1.0) || !(q > p) || !q.is_finite() {
        return Err(invalid!("witness needs 1 <= p < q < inf, got p={p}, q={q}"));
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(invalid!("witness parameter a must lie in (0, 1), got {a}"));
    }
    if order == 0 {
        return Err(invalid!("order N must be at least 1"));
    }
    let zero = Complex64::new(0.0, 0.0);
    let x0 = [Complex64::new(a, 0.0), zero];
    let x1 = [zero, Complex64::new(powf(1.0 - powf(a, q), 1.0 / q), 0.0)];
    let mut norms = vec![0.0; order + 1];
    norms[0] = lq_norm(&x0, q);
    norms[1] = lq_norm(&x1, q);
    let mut est = radius_from_norms(&norms, p, tol)?;
    est.kind = RadiusKind::WitnessBound;
    Ok(est)
}

/// `((1 − a^p) / (1 − a^q)^{p/q})^{1/p}`.
pub fn lq_witness_closed_form(p: f64, q: f64, a: f64) -> f64 {
    powf((1.0 - powf(a, p)) / powf(1.0 - powf(a, q), p / q), 1.0 / p)
}
