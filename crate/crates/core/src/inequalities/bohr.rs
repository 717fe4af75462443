//! Majorant-series inequalities: the operator Bohr inequality, the
//! subordination lemma, the refined inequality, Wiener's coefficient bound,
//! the algebraic properties of `M_r` and Milne's inequality.

use alloc::format;

use num_complex::Complex64;

use super::report::{fingerprint, VerificationReport};
use crate::error::invalid;
use crate::math::sqrt;
use crate::numerics::{operator_norm, DEFAULT_NORM_TOL};
use crate::series::{subordinate_operator_function, MatrixPowerSeries, SchwarzSeries};
use crate::{Error, Result};

const ONE_THIRD: f64 = 1.0 / 3.0;

/// `S(x) = Σ_{k≥1} (1/2 choose k)(−1)^{k+1} x^k = 1 − √(1 − x)`.
pub fn sfunc(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid!("S(x) needs x in [0, 1], got {x}"));
    }
    Ok(1.0 - sqrt(1.0 - x))
}

fn check_radius(r: f64, max: f64) -> Result<()> {
    if !(0.0..=max).contains(&r) {
        return Err(invalid!("radius must lie in [0, {max}], got {r}"));
    }
    Ok(())
}

fn require_certified(f: &MatrixPowerSeries) -> Result<()> {
    if f.is_certified_unit() {
        Ok(())
    } else {
        Err(Error::MissingCertificate)
    }
}

/// `(Σ x_k y_k)² ≤ Σ(x_k² + y_k²) · Σ x_k² y_k²/(x_k² + y_k²) ≤ Σ x_k² · Σ y_k²`.
/// Sample 0 is the left inequality, sample 1 the right one.
pub fn milne_check(x: &[f64], y: &[f64], slack: f64) -> Result<VerificationReport> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if x.iter().zip(y).any(|(a, b)| a.abs() + b.abs() == 0.0) {
        return Err(invalid!(
            "Milne's inequality needs |x_k| + |y_k| > 0 for every k"
        ));
    }
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let sum_sq: f64 = x.iter().zip(y).map(|(a, b)| a * a + b * b).sum();
    let harmonic: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| a * a * b * b / (a * a + b * b))
        .sum();
    let xx: f64 = x.iter().map(|a| a * a).sum();
    let yy: f64 = y.iter().map(|b| b * b).sum();
    let middle = sum_sq * harmonic;
    let mut report = VerificationReport::new("milne", slack).with_samples(1);
    report.record(0, middle - dot * dot, || {
        format!("n{}: cauchy side", x.len())
    });
    report.record(1, xx * yy - middle, || {
        format!("n{}: product side", x.len())
    });
    Ok(report)
}

/// `M_r(f) ≤ 1` for a certified unit-ball `f` with `A_0 = a_0 I`, `r ≤ 1/3`.
pub fn classical_bohr_check(
    f: &MatrixPowerSeries,
    r: f64,
    slack: f64,
) -> Result<VerificationReport> {
    require_certified(f)?;
    check_radius(r, ONE_THIRD)?;
    if f.coeffs()[0].as_scalar_multiple(DEFAULT_NORM_TOL).is_none() {
        return Err(invalid!(
            "the constant term must be a multiple of the identity"
        ));
    }
    let m = f.majorant(r)?;
    let mut report = VerificationReport::new("classical_bohr", slack)
        .with_samples(1)
        .with_grid(format!("r={r}"));
    report.record(0, 1.0 - m, || fingerprint(f));
    Ok(report)
}

/// `M_r(g ∘ φ) ≤ M_r(g)` for `r ≤ 1/3`.
pub fn subordination_majorant_check(
    g: &MatrixPowerSeries,
    phi: &SchwarzSeries,
    r: f64,
    slack: f64,
) -> Result<VerificationReport> {
    require_certified(g)?;
    check_radius(r, ONE_THIRD)?;
    let f = g.compose(phi, g.degree())?;
    let margin = g.majorant(r)? - f.majorant(r)?;
    let mut report = VerificationReport::new("subordination", slack)
        .with_samples(1)
        .with_grid(format!("r={r}"));
    report.record(0, margin, || {
        format!("{} phi={}", fingerprint(g), fingerprint(phi.series()))
    });
    Ok(report)
}

/// The quantities of the refined inequality for `f = (α − ψ)/(1 − ᾱψ) I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedBohrTerms {
    pub alpha: Complex64,
    pub beta: f64,
    pub g: f64,
    pub sum_majorant: f64,
    pub term2: f64,
    pub term3: f64,
    pub lhs: f64,
}

impl RefinedBohrTerms {
    /// `term2 + term3`, the defect that sharpens the plain inequality.
    pub fn defect(&self) -> f64 {
        self.term2 + self.term3
    }
}

/// Computes the refined left side from `M_r(f)` and `‖A_1‖`.
pub fn refined_bohr_terms(
    alpha: Complex64,
    a1_norm: f64,
    sum_majorant: f64,
    r: f64,
) -> RefinedBohrTerms {
    let a = alpha.norm();
    let k = 1.0 - a * a;
    let beta = a1_norm / k;
    let g = beta + r * (1.0 - beta * beta) / (1.0 - r * beta);
    let term2 = (1.0 - a) * (1.0 - r * (1.0 + 2.0 * a)) / (1.0 - r * a);
    let term3 = r * k * (1.0 - g) / ((1.0 - r * a) * (1.0 - r * a * g));
    RefinedBohrTerms {
        alpha,
        beta,
        g,
        sum_majorant,
        term2,
        term3,
        lhs: sum_majorant + term2 + term3,
    }
}

/// Builds `f` from `(α, ψ)` and checks the refined inequality `lhs ≤ 1`.
pub fn refined_bohr_check(
    alpha: Complex64,
    psi: &SchwarzSeries,
    d: usize,
    degree: usize,
    r: f64,
    slack: f64,
) -> Result<(RefinedBohrTerms, VerificationReport)> {
    check_radius(r, ONE_THIRD)?;
    if psi.series().coeffs().iter().all(|c| c.is_zero()) {
        return Err(invalid!("psi must be nonzero (f must be non-constant)"));
    }
    let f = subordinate_operator_function(alpha, psi, d, degree)?;
    let a1 = match f.coeff(1) {
        Some(c) => operator_norm(&c, DEFAULT_NORM_TOL)?,
        None => return Err(invalid!("series is too short to read A_1")),
    };
    let terms = refined_bohr_terms(alpha, a1, f.majorant(r)?, r);
    let mut report = VerificationReport::new("refined_bohr", slack)
        .with_samples(1)
        .with_grid(format!("r={r}"));
    report.record(0, 1.0 - terms.lhs, || {
        format!("alpha={} psi={}", alpha, fingerprint(psi.series()))
    });
    Ok((terms, report))
}

/// `|a_n| ≤ 1 − |a_0|²` for every stored `n ≥ 1` of a scalar unit-ball `f`.
pub fn wiener_check(f: &MatrixPowerSeries, slack: f64) -> Result<VerificationReport> {
    require_certified(f)?;
    if f.dim() != 1 {
        return Err(invalid!(
            "Wiener's bound is checked for scalar functions only"
        ));
    }
    let bound = 1.0 - f.scalar_coeff(0).norm_sqr();
    let mut report = VerificationReport::new("wiener", slack).with_samples(1);
    for n in 1..=f.degree() {
        report.record(n, bound - f.scalar_coeff(n).norm(), || {
            format!("{} n={n}", fingerprint(f))
        });
    }
    Ok(report)
}

/// Subadditivity, submultiplicativity, homogeneity and the shift rule of
/// `M_r` on `r = j / r_grid`, `j = 0..r_grid`.
pub fn majorant_property_check(
    f: &MatrixPowerSeries,
    g: &MatrixPowerSeries,
    r_grid: usize,
    slack: f64,
) -> Result<VerificationReport> {
    if r_grid == 0 {
        return Err(invalid!("r grid needs at least one point"));
    }
    let sum = f.add(g)?;
    let product = f.cauchy_product(g, f.degree() + g.degree())?;
    let alpha = Complex64::new(0.6, -0.8) * 0.75;
    let scaled = f.scale(alpha);
    let shifted = f.shift(2);
    let fnorms = f.coefficient_norms(DEFAULT_NORM_TOL)?;
    let m = |norms: &[f64], r: f64| norms.iter().rev().fold(0.0, |acc, &n| acc * r + n);
    let gnorms = g.coefficient_norms(DEFAULT_NORM_TOL)?;
    let sum_norms = sum.coefficient_norms(DEFAULT_NORM_TOL)?;
    let prod_norms = product.coefficient_norms(DEFAULT_NORM_TOL)?;
    let scaled_norms = scaled.coefficient_norms(DEFAULT_NORM_TOL)?;
    let shifted_norms = shifted.coefficient_norms(DEFAULT_NORM_TOL)?;

    let mut report = VerificationReport::new("majorant_properties", slack)
        .with_samples(1)
        .with_grid(format!("r_grid={r_grid}"));
    let tag = || format!("{} {}", fingerprint(f), fingerprint(g));
    for j in 0..r_grid {
        let r = j as f64 / r_grid as f64;
        let (mf, mg) = (m(&fnorms, r), m(&gnorms, r));
        report.record(j, mf + mg - m(&sum_norms, r), || {
            format!("subadditive r={r} {}", tag())
        });
        report.record(j, mf * mg - m(&prod_norms, r), || {
            format!("submultiplicative r={r} {}", tag())
        });
        report.record(j, -(m(&scaled_norms, r) - alpha.norm() * mf).abs(), || {
            format!("homogeneous r={r} {}", tag())
        });
        report.record(j, -(m(&shifted_norms, r) - r * r * mf).abs(), || {
            format!("shift r={r} {}", tag())
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::Status;
    use crate::numerics::ComplexMatrix;
    use crate::series::mobius_series;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sfunc_values() {
        assert_eq!(sfunc(0.0).unwrap(), 0.0);
        assert_eq!(sfunc(0.75).unwrap(), 0.5);
        assert!((sfunc(0.5).unwrap() - 0.292_893_218_813_452_54).abs() < 1e-15);
        assert_eq!(sfunc(1.0).unwrap(), 1.0);
        assert!(sfunc(1.1).is_err());
        assert!(sfunc(-0.1).is_err());
    }

    #[test]
    fn milne_examples() {
        let r = milne_check(&[1.0, 0.0], &[0.0, 1.0], 1e-12).unwrap();
        assert_eq!(r.status(), Status::Pass);
        let eq = milne_check(&[1.0, 1.0], &[1.0, 1.0], 1e-12).unwrap();
        assert_eq!(eq.min_margin, 0.0);
        assert!(milne_check(&[0.0], &[0.0], 1e-12).is_err());
    }

    #[test]
    fn classical_bohr_mobius() {
        let f = mobius_series(c(0.5), 64)
            .unwrap()
            .tensor_identity(2)
            .unwrap();
        let r = classical_bohr_check(&f, ONE_THIRD, 1e-9).unwrap();
        assert!((r.min_margin - 0.2).abs() < 1e-12);
        let near = mobius_series(c(0.99), 64).unwrap();
        let r = classical_bohr_check(&near, ONE_THIRD, 1e-9).unwrap();
        let expect = 2.0 * 0.01f64.powi(2) / (3.0 - 0.99);
        assert!((r.min_margin - expect).abs() < 1e-12, "{}", r.min_margin);
        assert!(classical_bohr_check(&f, 0.4, 1e-9).is_err());
    }

    #[test]
    fn classical_bohr_constant() {
        let f = MatrixPowerSeries::constant(ComplexMatrix::scalar(3, c(0.4)).unwrap()).unwrap();
        for r in [0.0, 0.1, ONE_THIRD] {
            assert!((classical_bohr_check(&f, r, 1e-9).unwrap().min_margin - 0.6).abs() < 1e-15);
        }
    }

    #[test]
    fn subordination_examples() {
        let g = mobius_series(c(0.5), 64).unwrap();
        let same =
            subordination_majorant_check(&g, &SchwarzSeries::identity(), ONE_THIRD, 1e-9).unwrap();
        assert!(same.min_margin.abs() < 1e-15);
        let sq =
            subordination_majorant_check(&g, &SchwarzSeries::monomial(2), ONE_THIRD, 1e-9).unwrap();
        assert!(sq.min_margin > 0.2);
        let z2 = MatrixPowerSeries::monomial(2, 1, c(1.0)).unwrap();
        let half = SchwarzSeries::new(
            MatrixPowerSeries::real_polynomial(&[0.0, 0.5])
                .unwrap()
                .assume_norm_bound(0.5)
                .unwrap(),
        )
        .unwrap();
        let rep = subordination_majorant_check(&z2, &half, 0.3, 1e-9).unwrap();
        assert!((rep.min_margin - 0.15).abs() < 1e-15);
    }

    #[test]
    fn refined_equality_witnesses() {
        for (psi, r, m) in [
            (SchwarzSeries::identity(), ONE_THIRD, 0.8),
            (SchwarzSeries::monomial(2), ONE_THIRD, 0.588_235_294_117_647),
            (SchwarzSeries::identity(), 0.2, 2.0 / 3.0),
        ] {
            let (terms, report) = refined_bohr_check(c(0.5), &psi, 2, 64, r, 1e-9).unwrap();
            assert!((terms.lhs - 1.0).abs() < 1e-12, "{terms:?}");
            assert!((terms.sum_majorant - m).abs() < 1e-12, "{terms:?}");
            assert_eq!(report.status(), Status::Pass);
        }
    }

    #[test]
    fn refined_rejects_constant() {
        let zero = SchwarzSeries::new(
            MatrixPowerSeries::real_polynomial(&[0.0, 0.0])
                .unwrap()
                .assume_norm_bound(0.0)
                .unwrap(),
        )
        .unwrap();
        assert!(refined_bohr_check(c(0.5), &zero, 1, 8, 0.2, 1e-9).is_err());
    }

    #[test]
    fn wiener_examples() {
        let m = mobius_series(c(0.7), 20).unwrap();
        let r = wiener_check(&m, 1e-9).unwrap();
        assert!(r.min_margin.abs() < 1e-15);
        assert_eq!(r.status(), Status::Pass);
        let z = MatrixPowerSeries::monomial(1, 1, c(1.0)).unwrap();
        assert_eq!(wiener_check(&z, 1e-9).unwrap().min_margin, 0.0);
    }

    #[test]
    fn majorant_examples() {
        let z = MatrixPowerSeries::monomial(1, 1, c(1.0)).unwrap();
        let r = majorant_property_check(&z, &z, 16, 1e-12).unwrap();
        assert_eq!(r.status(), Status::Pass);
        let one = MatrixPowerSeries::real_polynomial(&[1.0]).unwrap();
        let minus = MatrixPowerSeries::real_polynomial(&[-1.0]).unwrap();
        let r = majorant_property_check(&one, &minus, 4, 1e-12).unwrap();
        assert_eq!(r.status(), Status::Pass);
    }
}
