use crate::error::invalid;
use crate::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 4096;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// A closed interval `[lo, hi]` with a target width `tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
    tol: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, tol: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(invalid!("bracket endpoints must be finite"));
        }
        if !(lo < hi) {
            return Err(invalid!("bracket needs lo < hi, got [{lo}, {hi}]"));
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(invalid!("bracket tolerance must be positive, got {tol}"));
        }
        Ok(Self { lo, hi, tol })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// Bisection. Returns the final enclosing interval `(lo, hi)`; its width is
/// at most `tol` unless `tol` is below the floating-point spacing there.
pub fn bisect_interval(mut f: impl FnMut(f64) -> f64, b: &Bracket) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (b.lo, b.hi);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(invalid!("function is NaN at a bracket endpoint"));
    }
    if f_lo == 0.0 {
        return Ok((lo, lo));
    }
    if f_hi == 0.0 {
        return Ok((hi, hi));
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { f_lo, f_hi });
    }
    while hi - lo > b.tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid.is_nan() {
            return Err(invalid!("function is NaN at {mid}"));
        }
        if f_mid == 0.0 {
            return Ok((mid, mid));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Root of `f` inside the bracket, as the midpoint of the final interval.
pub fn bisect_root(f: impl FnMut(f64) -> f64, b: &Bracket) -> Result<f64> {
    let (lo, hi) = bisect_interval(f, b)?;
    Ok(lo + 0.5 * (hi - lo))
}

/// Minimizes `f` over the open interval `(lo, hi)`.
///
/// Scans `grid_points` equally spaced interior points, then runs
/// golden-section search inside the two grid cells around the best sample.
/// No unimodality is assumed; the grid does the global work. Endpoints are
/// never evaluated, so `f` may diverge there.
pub fn minimize_1d(
    mut f: impl FnMut(f64) -> f64,
    b: &Bracket,
    grid_points: usize,
) -> Result<(f64, f64)> {
    if grid_points < 3 {
        return Err(invalid!(
            "minimize_1d needs at least 3 grid points, got {grid_points}"
        ));
    }
    let h = (b.hi - b.lo) / (grid_points as f64 + 1.0);
    let mut best = (f64::NAN, f64::INFINITY);
    let mut best_index = 0;
    for i in 1..=grid_points {
        let x = b.lo + i as f64 * h;
        let y = f(x);
        if !y.is_finite() {
            return Err(invalid!("objective is not finite at interior point {x}"));
        }
        if y < best.1 {
            best = (x, y);
            best_index = i;
        }
    }

    let mut left = b.lo + (best_index - 1) as f64 * h;
    let mut right = b.lo + (best_index + 1) as f64 * h;
    let mut x1 = right - INV_PHI * (right - left);
    let mut x2 = left + INV_PHI * (right - left);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while right - left > b.tol {
        if !f1.is_finite() || !f2.is_finite() {
            return Err(invalid!("objective is not finite during refinement"));
        }
        if f1 <= f2 {
            right = x2;
            x2 = x1;
            f2 = f1;
            x1 = right - INV_PHI * (right - left);
            f1 = f(x1);
        } else {
            left = x1;
            x1 = x2;
            f1 = f2;
            x2 = left + INV_PHI * (right - left);
            f2 = f(x2);
        }
        if !(x1 > left && x2 < right) {
            break;
        }
    }
    for (x, y) in [(x1, f1), (x2, f2)] {
        if y.is_finite() && y < best.1 {
            best = (x, y);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_validation() {
        assert!(Bracket::new(0.0, 0.0, 1e-9).is_err());
        assert!(Bracket::new(1.0, 0.0, 1e-9).is_err());
        assert!(Bracket::new(0.0, 1.0, 0.0).is_err());
        assert!(Bracket::new(0.0, f64::INFINITY, 1e-3).is_err());
    }

    #[test]
    fn linear_root() {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        assert!((bisect_root(|x| x - 0.5, &b).unwrap() - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn quadratic_root() {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        let x = bisect_root(|x| x + x * x - 0.5, &b).unwrap();
        assert!((x - (3f64.sqrt() - 1.0) / 2.0).abs() <= 1e-12);
    }

    #[test]
    fn quartic_root() {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        let x = bisect_root(|x| x * x + x.powi(4) - 1.0, &b).unwrap();
        let expect = ((5f64.sqrt() - 1.0) / 2.0).sqrt();
        assert!((x - expect).abs() <= 1e-12);
        assert!((x - 0.786_151_4).abs() < 1e-7);
    }

    #[test]
    fn same_sign_is_rejected() {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        assert!(matches!(
            bisect_root(|x| x + 1.0, &b),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn endpoint_root_is_returned() {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        assert_eq!(bisect_root(|x| x, &b).unwrap(), 0.0);
        assert_eq!(bisect_root(|x| x - 1.0, &b).unwrap(), 1.0);
    }

    #[test]
    fn interior_minimum() {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        let (x, y) = minimize_1d(|a| (a - 0.3) * (a - 0.3), &b, DEFAULT_GRID_POINTS).unwrap();
        assert!((x - 0.3).abs() < 1e-6);
        assert!(y < 1e-12);
    }

    #[test]
    fn boundary_infimum_is_approached_from_above() {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        let (x, y) = minimize_1d(|a| 1.0 / (1.0 + a), &b, DEFAULT_GRID_POINTS).unwrap();
        assert!(x < 1.0 && y > 0.5 && y < 0.5 + 1e-3, "{x} {y}");
        let (_, coarse) = minimize_1d(|a| 1.0 / (1.0 + a), &b, 16).unwrap();
        assert!(coarse >= y);
    }

    #[test]
    fn boundary_divergent_objective() {
        // Dense-grid (10^6 points) and mpmath reference: min 0.974950705685476 at a = 0.2955977.
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        let (x, y) = minimize_1d(
            |a| (1.0 - a.powf(1.5)).powf(2.0 / 3.0) / (1.0 - a * a),
            &b,
            DEFAULT_GRID_POINTS,
        )
        .unwrap();
        assert!((y - 0.974_950_705_685_476).abs() < 1e-12, "{y}");
        assert!((x - 0.295_597_742_5).abs() < 1e-5, "{x}");
    }

    #[test]
    fn too_few_grid_points_or_non_finite() {
        let b = Bracket::new(0.0, 1.0, 1e-9).unwrap();
        assert!(minimize_1d(|a| a, &b, 2).is_err());
        assert!(minimize_1d(|a| if a > 0.5 { f64::NAN } else { a }, &b, 8).is_err());
    }
}
