//! The lower-bound constants for the scalar p-Bohr radius of order N.

use crate::error::invalid;
use crate::math::{powf, powi};
use crate::numerics::{bisect_interval, minimize_1d, Bracket, DEFAULT_GRID_POINTS};
use crate::{Error, Result};

/// `(1 − a^p)^{1/p} / (1 − a²)` on `0 < a < 1`.
pub fn xi_objective(p: f64, a: f64) -> f64 {
    powf(1.0 - powf(a, p), 1.0 / p) / (1.0 - a * a)
}

/// `ξ_p = inf_{0<a<1} (1 − a^p)^{1/p} / (1 − a²)`.
///
/// For `p = 1` the objective is `1/(1 + a)` and the infimum `1/2` sits at
/// the excluded endpoint `a → 1`. For `p > 1` the objective diverges at
/// `a → 1`, so the infimum is the smaller of the `a → 0` limit (exactly 1)
/// and the interior minimum.
pub fn xi_p(p: f64, tol: f64) -> Result<f64> {
    xi_p_with_grid(p, tol, DEFAULT_GRID_POINTS)
}

pub fn xi_p_with_grid(p: f64, tol: f64, grid_points: usize) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid!("xi_p needs p >= 1, got {p}"));
    }
    if p == 1.0 {
        return Ok(0.5);
    }
    let bracket = Bracket::new(0.0, 1.0, tol)?;
    let (_, interior) = minimize_1d(|a| xi_objective(p, a), &bracket, grid_points)?;
    Ok(interior.min(1.0))
}

/// `Ψ_{p,N}(r) = Σ_{k=1}^{N} r^{pk} − ξ`.
pub fn psi(p: f64, order: usize, r: f64, xi: f64) -> f64 {
    let rp = powf(r, p);
    (1..=order).map(|k| powi(rp, k as i32)).sum::<f64>() - xi
}

/// `r*_N`: the unique root of `Ψ_{p,N}` in `(0, 1)`, which exists iff
/// `ξ_p < N` (Ψ is increasing, `Ψ(0) = −ξ_p < 0`, `Ψ(1) = N − ξ_p`).
pub fn rstar(p: f64, order: usize, tol: f64) -> Result<f64> {
    if order == 0 {
        return Err(invalid!("order N must be at least 1"));
    }
    rstar_from_xi(p, order, xi_p(p, tol)?, tol)
}

/// Root of `Σ_{k=1}^{N} r^{pk} = xi` for an explicit right side.
///
/// The coefficient bound `|a_k| ≤ 1 − |a_0|²` makes the order-N functional
/// at most 1 whenever `Σ r^{pk} ≤ (1 − a^p)/(1 − a²)^p` for every `a`, so the
/// right side that yields a valid lower bound is `ξ_p^p`. For `p > 1` and
/// `ξ_p < 1` this is smaller than `ξ_p`, and [`rstar`] can exceed the true
/// radius (at `p = 1.5, N = 1` a Möbius map has radius `ξ_p < r*_1`).
pub fn rstar_from_xi(p: f64, order: usize, xi: f64, tol: f64) -> Result<f64> {
    if order == 0 {
        return Err(invalid!("order N must be at least 1"));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid!("p must be finite and at least 1, got {p}"));
    }
    if !(xi < order as f64) {
        return Err(Error::XiNotBelowOrder { p, xi, order });
    }
    let (lo, hi) = bisect_interval(|r| psi(p, order, r, xi), &Bracket::new(0.0, 1.0, tol)?)?;
    Ok(lo + 0.5 * (hi - lo))
}
