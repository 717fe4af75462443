use num_complex::Complex64;

use super::MatrixPowerSeries;
use crate::error::invalid;
use crate::math::{cis, powi, PI, TAU};
use crate::numerics::{operator_norm, DEFAULT_NORM_TOL};
use crate::Result;

pub const DEFAULT_BOUNDARY_GRID: usize = 2048;

/// Sampled maximum of `‖f‖` on a circle and a certified upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySup {
    pub lower: f64,
    pub certified_upper: f64,
}

impl MatrixPowerSeries {
    /// Maximum of `‖f(ρe^{iθ_j})‖` over `grid` equally spaced angles, plus
    /// the upper bound `lower + h·Σ n‖A_n‖ρ^{n−1}` with `h = πρ·(2π/grid)`,
    /// which dominates the arc distance to the nearest sample times the
    /// derivative bound on the circle.
    pub fn boundary_sup_estimate(&self, rho: f64, grid: usize) -> Result<BoundarySup> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(invalid!("boundary radius must lie in (0, 1], got {rho}"));
        }
        if grid < 8 {
            return Err(invalid!(
                "boundary grid needs at least 8 points, got {grid}"
            ));
        }
        let mut lower: f64 = 0.0;
        for j in 0..grid {
            let z = cis(TAU * j as f64 / grid as f64) * rho;
            lower = lower.max(operator_norm(&self.evaluate(z), DEFAULT_NORM_TOL)?);
        }
        let norms = self.coefficient_norms(DEFAULT_NORM_TOL)?;
        let derivative: f64 = norms
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| n as f64 * a * powi(rho, n as i32 - 1))
            .sum();
        let h = PI * rho * (TAU / grid as f64);
        Ok(BoundarySup {
            lower,
            certified_upper: lower + h * derivative,
        })
    }

    /// Scales `f` by `1 / certified_upper` on the unit circle, so the result
    /// carries a certified unit norm bound.
    pub fn normalize_to_unit_ball(&self, grid: usize) -> Result<Self> {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return Err(invalid!("cannot normalize the zero series"));
        }
        let sup = self.boundary_sup_estimate(1.0, grid)?;
        let mut out = self.scale(Complex64::new(1.0 / sup.certified_upper, 0.0));
        out.norm_bound = Some(1.0);
        Ok(out)
    }

    /// Attaches `certified_upper` (on the unit circle) as the norm bound.
    pub fn with_certified_bound(mut self, grid: usize) -> Result<Self> {
        let sup = self.boundary_sup_estimate(1.0, grid)?;
        self.norm_bound = Some(sup.certified_upper);
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ComplexMatrix;
    use crate::series::mobius_series;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_function_on_circle() {
        let z = MatrixPowerSeries::monomial(1, 1, c(1.0, 0.0)).unwrap();
        for grid in [8, 100, 2048] {
            let s = z.boundary_sup_estimate(1.0, grid).unwrap();
            assert!((s.lower - 1.0).abs() < 1e-15);
            assert!(s.certified_upper > 1.0);
        }
    }

    #[test]
    fn constant_has_no_slack() {
        let k =
            MatrixPowerSeries::constant(ComplexMatrix::scalar(2, c(0.3, 0.0)).unwrap()).unwrap();
        let s = k.boundary_sup_estimate(1.0, 64).unwrap();
        assert_eq!(s.lower, s.certified_upper);
        assert!((s.lower - 0.3).abs() < 1e-15);
    }

    #[test]
    fn mobius_is_unimodular_on_circle() {
        let m = mobius_series(c(0.5, 0.0), 60).unwrap();
        let s = m.boundary_sup_estimate(1.0, 2048).unwrap();
        assert!(s.lower >= 0.999 && s.lower <= 1.0 + 1e-12, "{}", s.lower);
        assert!(s.certified_upper >= 1.0);
    }

    #[test]
    fn normalize_examples() {
        let h = 2.0 * PI * PI / 2048.0;
        let two_z = MatrixPowerSeries::real_polynomial(&[0.0, 2.0]).unwrap();
        let n = two_z.normalize_to_unit_ball(2048).unwrap();
        assert!((n.scalar_coeff(1).re - 2.0 / (2.0 + 2.0 * h)).abs() < 1e-14);
        assert_eq!(n.norm_bound(), Some(1.0));

        let five =
            MatrixPowerSeries::constant(ComplexMatrix::scalar(2, c(5.0, 0.0)).unwrap()).unwrap();
        let n = five.normalize_to_unit_ball(64).unwrap();
        assert!((n.majorant(0.0).unwrap() - 1.0).abs() < 1e-14);

        let one_plus_z = MatrixPowerSeries::real_polynomial(&[1.0, 1.0]).unwrap();
        let n = one_plus_z.normalize_to_unit_ball(2048).unwrap();
        assert!((n.scalar_coeff(0).re - 1.0 / (2.0 + h)).abs() < 1e-14);

        assert!(MatrixPowerSeries::real_polynomial(&[0.0, 0.0])
            .unwrap()
            .normalize_to_unit_ball(64)
            .is_err());
    }

    #[test]
    fn bad_arguments() {
        let z = MatrixPowerSeries::monomial(1, 1, c(1.0, 0.0)).unwrap();
        assert!(z.boundary_sup_estimate(0.0, 64).is_err());
        assert!(z.boundary_sup_estimate(1.0, 7).is_err());
    }
}
