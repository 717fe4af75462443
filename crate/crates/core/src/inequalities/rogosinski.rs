//! Rogosinski-type partial-sum refinements and the identities behind them.
//!
//! With `B_m = A_m e^{imt}`: `R_l = Σ_{m≤l} B_m`, `H_n = Σ_{l≤n} R_l`,
//! `T_l = Σ_{m=0}^{n} A_{m+l} e^{imt}`,
//! `p(n) = (1/(n+1)) Σ_{l≥1} ‖T_l‖²` and
//! `q(n) = (1/(n+1)) Σ_{l≤n} (1 − ‖R_l‖²)/(1 + ‖R_l‖²)`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use super::bohr::sfunc;
use super::report::{fingerprint, Mode, VerificationReport};
use crate::error::invalid;
use crate::math::{cis, powi, TAU};
use crate::numerics::{operator_norm, ComplexMatrix, DEFAULT_NORM_TOL};
use crate::series::MatrixPowerSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RogosinskiTerms {
    pub t: f64,
    /// `R_0..R_n`.
    pub r: Vec<ComplexMatrix>,
    /// `Σ_{l≥1} ‖T_l‖²`.
    pub t_sq_sum: f64,
    /// `H_0..H_n`.
    pub h: Vec<ComplexMatrix>,
    pub p_n: f64,
    pub q_n: f64,
}

fn require_polynomial(f: &MatrixPowerSeries) -> Result<()> {
    if f.is_polynomial() {
        Ok(())
    } else {
        Err(Error::NotPolynomial)
    }
}

fn mode_for(f: &MatrixPowerSeries) -> Mode {
    if f.dim() == 1 {
        Mode::Assert
    } else {
        Mode::Report
    }
}

/// `A_m e^{imt}` for `m = 0..=max(n, D)`.
fn rotated(f: &MatrixPowerSeries, t: f64, upto: usize) -> Result<Vec<ComplexMatrix>> {
    (0..=upto)
        .map(|m| {
            let a = f.coeff(m).ok_or(Error::NotPolynomial)?;
            Ok(a.scale(cis(m as f64 * t)))
        })
        .collect()
}

fn partial_sums(b: &[ComplexMatrix], n: usize) -> Result<Vec<ComplexMatrix>> {
    let mut out: Vec<ComplexMatrix> = Vec::with_capacity(n + 1);
    let mut acc = ComplexMatrix::zeros(b[0].dim())?;
    for bm in &b[..=n] {
        acc.add_scaled(bm, Complex64::new(1.0, 0.0));
        out.push(acc.clone());
    }
    Ok(out)
}

fn norm(a: &ComplexMatrix) -> Result<f64> {
    operator_norm(a, DEFAULT_NORM_TOL)
}

/// `Σ_{l=1}^{D} ‖Σ_{m=0}^{n} A_{m+l} e^{imt}‖²`, an exact finite sum.
fn tail_square_sum(f: &MatrixPowerSeries, t: f64, n: usize) -> Result<f64> {
    let mut total = 0.0;
    for l in 1..=f.degree() {
        let mut acc = ComplexMatrix::zeros(f.dim())?;
        for m in 0..=n.min(f.degree() - l) {
            acc.add_scaled(&f.coeffs()[m + l], cis(m as f64 * t));
        }
        let v = norm(&acc)?;
        total += v * v;
    }
    Ok(total)
}

pub fn rogosinski_terms(f: &MatrixPowerSeries, t: f64, n: usize) -> Result<RogosinskiTerms> {
    require_polynomial(f)?;
    let b = rotated(f, t, n)?;
    let r = partial_sums(&b, n)?;
    let h = partial_sums(&r, n)?;
    let t_sq_sum = tail_square_sum(f, t, n)?;
    let mut q_sum = 0.0;
    for rl in &r {
        let s = norm(rl)?;
        let s2 = s * s;
        q_sum += (1.0 - s2) / (1.0 + s2);
    }
    let scale = 1.0 / (n as f64 + 1.0);
    Ok(RogosinskiTerms {
        t,
        r,
        t_sq_sum,
        h,
        p_n: t_sq_sum * scale,
        q_n: q_sum * scale,
    })
}

/// `Σ_{l≤n} ‖R_l‖² + Σ_{l≥1} ‖T_l‖² ≤ n + 1`. Runs in report mode for
/// `d ≥ 2`, where the bound can fail under the operator norm.
pub fn parseval_bound_check(
    f: &MatrixPowerSeries,
    t: f64,
    n: usize,
    slack: f64,
) -> Result<VerificationReport> {
    if !f.is_certified_unit() {
        return Err(Error::MissingCertificate);
    }
    let terms = rogosinski_terms(f, t, n)?;
    let mut lhs = terms.t_sq_sum;
    for rl in &terms.r {
        let s = norm(rl)?;
        lhs += s * s;
    }
    let mut report = VerificationReport::new("parseval", slack)
        .with_samples(1)
        .with_mode(mode_for(f))
        .with_grid(format!("t={t}:n={n}"));
    report.record(0, n as f64 + 1.0 - lhs, || {
        format!("{} t={t} n={n}", fingerprint(f))
    });
    Ok(report)
}

/// Largest entrywise difference between `Σ_{n≤N} A_n e^{int} r^n` and its
/// second-difference form in `H_n`.
pub fn abel_identity_residual(f: &MatrixPowerSeries, t: f64, r: f64, order: usize) -> Result<f64> {
    require_polynomial(f)?;
    let b = rotated(f, t, order)?;
    let h = partial_sums(&partial_sums(&b, order)?, order)?;
    let mut lhs = ComplexMatrix::zeros(f.dim())?;
    for (m, bm) in b.iter().enumerate() {
        lhs.add_scaled(bm, Complex64::new(powi(r, m as i32), 0.0));
    }
    let mut rhs = ComplexMatrix::zeros(f.dim())?;
    let w = |x: f64| Complex64::new(x, 0.0);
    if order == 0 {
        rhs = h[0].clone();
    } else {
        for (n, hn) in h.iter().enumerate().take(order - 1) {
            rhs.add_scaled(hn, w((1.0 - r) * (1.0 - r) * powi(r, n as i32)));
        }
        rhs.add_scaled(
            &h[order - 1],
            w((1.0 - 2.0 * r) * powi(r, order as i32 - 1)),
        );
        rhs.add_scaled(&h[order], w(powi(r, order as i32)));
    }
    lhs.max_abs_diff(&rhs)
}

pub fn abel_identity_check(
    f: &MatrixPowerSeries,
    t: f64,
    r: f64,
    order: usize,
    slack: f64,
) -> Result<VerificationReport> {
    let residual = abel_identity_residual(f, t, r, order)?;
    let mut report = VerificationReport::new("abel_identity", slack)
        .with_samples(1)
        .with_grid(format!("t={t}:r={r}:N={order}"));
    report.record(0, -residual, || {
        format!("{} t={t} r={r} N={order}", fingerprint(f))
    });
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RogosinskiVariant {
    /// Corrections built from `p(n)`.
    A,
    /// Corrections built from `q(n)`.
    B,
}

impl RogosinskiVariant {
    pub fn name(self) -> &'static str {
        match self {
            RogosinskiVariant::A => "a",
            RogosinskiVariant::B => "b",
        }
    }
}

impl fmt::Display for RogosinskiVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RogosinskiVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(RogosinskiVariant::A),
            "b" => Ok(RogosinskiVariant::B),
            other => Err(invalid!("unknown Rogosinski variant '{other}'")),
        }
    }
}

/// How the correction angle relates to `arg z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Coupling {
    /// `z = r e^{it}` with the same `t` in `p(n)`/`q(n)`.
    #[default]
    Coupled,
    /// Worst case over independent angles; exploratory, never asserted.
    Uncoupled,
}

/// Values outside [0, 1] by more than this are recorded as notes.
const CLAMP_TOL: f64 = 1e-12;

/// `S` of each correction sequence entry `n = 0..=N` at angle `t`.
/// Returns the values and how far any input strayed outside [0, 1].
fn corrections(
    f: &MatrixPowerSeries,
    t: f64,
    order: usize,
    variant: RogosinskiVariant,
) -> Result<(Vec<f64>, f64)> {
    let mut out = Vec::with_capacity(order + 1);
    let mut excess: f64 = 0.0;
    for n in 0..=order {
        let terms = rogosinski_terms(f, t, n)?;
        let x = match variant {
            RogosinskiVariant::A => terms.p_n,
            RogosinskiVariant::B => terms.q_n,
        };
        excess = excess.max(x - 1.0).max(-x);
        out.push(sfunc(x.clamp(0.0, 1.0))?);
    }
    Ok((out, excess))
}

/// `(1−2r) r^{N−1} N S_{N−1} + (1−r)² Σ_{n≤N−2} r^n (n+1) S_n + r^N (N+1) S_N`.
fn correction_sum(s: &[f64], r: f64, order: usize) -> f64 {
    let nf = order as f64;
    let mut total = (1.0 - 2.0 * r) * powi(r, order as i32 - 1) * nf * s[order - 1]
        + powi(r, order as i32) * (nf + 1.0) * s[order];
    for (n, sn) in s.iter().enumerate().take(order - 1) {
        total += (1.0 - r) * (1.0 - r) * powi(r, n as i32) * (n as f64 + 1.0) * sn;
    }
    total
}

fn partial_sum_norm(f: &MatrixPowerSeries, z: Complex64, order: usize) -> Result<f64> {
    let mut acc = ComplexMatrix::zeros(f.dim())?;
    let mut power = Complex64::new(1.0, 0.0);
    for m in 0..=order {
        let a = f.coeff(m).ok_or(Error::NotPolynomial)?;
        acc.add_scaled(&a, power);
        power *= z;
    }
    norm(&acc)
}

/// Left side of part (a) or (b) at `z = r e^{it}` (coupled).
pub fn rogosinski_lhs(
    f: &MatrixPowerSeries,
    order: usize,
    r: f64,
    t: f64,
    variant: RogosinskiVariant,
) -> Result<f64> {
    validate(f, order, r)?;
    let (s, _) = corrections(f, t, order, variant)?;
    Ok(partial_sum_norm(f, cis(t) * r, order)? + correction_sum(&s, r, order))
}

fn validate(f: &MatrixPowerSeries, order: usize, r: f64) -> Result<()> {
    if !f.is_certified_unit() {
        return Err(Error::MissingCertificate);
    }
    require_polynomial(f)?;
    if order == 0 {
        return Err(invalid!("order N must be at least 1"));
    }
    if !(0.0..=0.5).contains(&r) {
        return Err(invalid!("radius must lie in [0, 1/2], got {r}"));
    }
    Ok(())
}

/// Checks `LHS ≤ 1` on `t = 2πj/t_grid`. Scalar inputs are asserted;
/// matrix inputs and the uncoupled sweep run in report mode.
pub fn rogosinski_check(
    f: &MatrixPowerSeries,
    order: usize,
    r: f64,
    variant: RogosinskiVariant,
    t_grid: usize,
    coupling: Coupling,
    slack: f64,
) -> Result<VerificationReport> {
    let mut reports = rogosinski_check_radii(f, order, &[r], variant, t_grid, coupling, slack)?;
    Ok(reports.remove(0))
}

/// [`rogosinski_check`] for several radii at once, one report per radius.
/// The corrections depend only on `t` and are computed once per angle.
pub fn rogosinski_check_radii(
    f: &MatrixPowerSeries,
    order: usize,
    radii: &[f64],
    variant: RogosinskiVariant,
    t_grid: usize,
    coupling: Coupling,
    slack: f64,
) -> Result<Vec<VerificationReport>> {
    for &r in radii {
        validate(f, order, r)?;
    }
    if t_grid == 0 {
        return Err(invalid!("t grid needs at least one point"));
    }
    let id = match coupling {
        Coupling::Coupled => format!("rogosinski_{variant}"),
        Coupling::Uncoupled => format!("rogosinski_{variant}_uncoupled"),
    };
    let mode = match coupling {
        Coupling::Coupled => mode_for(f),
        Coupling::Uncoupled => Mode::Report,
    };
    let angles: Vec<f64> = (0..t_grid)
        .map(|j| TAU * j as f64 / t_grid as f64)
        .collect();
    let mut reports = Vec::with_capacity(radii.len());
    let mut worst_partial = Vec::with_capacity(radii.len());
    for &r in radii {
        reports.push(
            VerificationReport::new(&id, slack)
                .with_samples(1)
                .with_mode(mode)
                .with_grid(format!("t_grid={t_grid}:r={r}:N={order}")),
        );
        let mut m: f64 = 0.0;
        if coupling == Coupling::Uncoupled {
            for &s in &angles {
                m = m.max(partial_sum_norm(f, cis(s) * r, order)?);
            }
        }
        worst_partial.push(m);
    }
    let mut worst_excess: f64 = 0.0;
    for (j, &t) in angles.iter().enumerate() {
        let (s, excess) = corrections(f, t, order, variant)?;
        worst_excess = worst_excess.max(excess);
        for (k, &r) in radii.iter().enumerate() {
            let partial = match coupling {
                Coupling::Coupled => partial_sum_norm(f, cis(t) * r, order)?,
                Coupling::Uncoupled => worst_partial[k],
            };
            let lhs = partial + correction_sum(&s, r, order);
            reports[k].record(j, 1.0 - lhs, || format!("{} t={t}", fingerprint(f)));
        }
    }
    if worst_excess > CLAMP_TOL {
        for report in &mut reports {
            report.note(format!(
                "correction argument left [0, 1] by up to {worst_excess:e}; clamped before S"
            ));
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::Status;
    use crate::math::PI;

    fn z_times_identity(d: usize) -> MatrixPowerSeries {
        MatrixPowerSeries::monomial(d, 1, Complex64::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn terms_of_z() {
        let f = z_times_identity(2);
        let t0 = rogosinski_terms(&f, 0.0, 0).unwrap();
        assert!((t0.p_n - 1.0).abs() < 1e-12 && t0.q_n == 1.0);
        let t1 = rogosinski_terms(&f, 0.0, 1).unwrap();
        assert!((t1.p_n - 0.5).abs() < 1e-15 && (t1.q_n - 0.5).abs() < 1e-15);
        assert!(t1.r[0].is_zero());
        assert_eq!(t1.h[1], ComplexMatrix::identity(2).unwrap());
    }

    #[test]
    fn terms_of_zero() {
        let f = MatrixPowerSeries::real_polynomial(&[0.0]).unwrap();
        for n in 0..4 {
            let t = rogosinski_terms(&f, 1.0, n).unwrap();
            assert_eq!((t.p_n, t.q_n), (0.0, 1.0));
        }
    }

    #[test]
    fn truncated_input_is_rejected() {
        let f = crate::series::mobius_series(Complex64::new(0.5, 0.0), 8).unwrap();
        assert_eq!(
            rogosinski_terms(&f, 0.0, 1).unwrap_err(),
            Error::NotPolynomial
        );
    }

    #[test]
    fn parseval_examples() {
        let f = z_times_identity(1);
        let r = parseval_bound_check(&f, 0.0, 1, 1e-12).unwrap();
        assert!(r.min_margin.abs() < 1e-15);
        assert_eq!(r.status(), Status::Pass);
        let half = MatrixPowerSeries::constant(
            ComplexMatrix::scalar(1, Complex64::new(0.5, 0.0)).unwrap(),
        )
        .unwrap();
        assert!(
            (parseval_bound_check(&half, 0.0, 0, 1e-12)
                .unwrap()
                .min_margin
                - 0.75)
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn parseval_fails_for_diagonal_matrix_function() {
        // diag(1, z): ‖R_0‖ = ‖T_1‖ = 1 at n = 0, so the sum is 2 > 1.
        let mut a0 = ComplexMatrix::zeros(2).unwrap();
        a0.set(0, 0, Complex64::new(1.0, 0.0));
        let mut a1 = ComplexMatrix::zeros(2).unwrap();
        a1.set(1, 1, Complex64::new(1.0, 0.0));
        let f = MatrixPowerSeries::polynomial(alloc::vec![a0, a1])
            .unwrap()
            .assume_norm_bound(1.0)
            .unwrap();
        let r = parseval_bound_check(&f, 0.0, 0, 1e-12).unwrap();
        assert!((r.min_margin + 1.0).abs() < 1e-12);
        assert_eq!(r.status(), Status::Finding);
    }

    #[test]
    fn abel_examples() {
        let f = z_times_identity(2);
        assert!(abel_identity_residual(&f, 0.7, 0.3, 1).unwrap() < 1e-15);
        let g = MatrixPowerSeries::real_polynomial(&[0.3, -0.2, 0.1, 0.05]).unwrap();
        assert_eq!(abel_identity_residual(&g, 0.0, 0.4, 0).unwrap(), 0.0);
        for n in 1..=5 {
            assert!(abel_identity_residual(&g, 1.3, 0.45, n).unwrap() < 1e-15);
        }
    }

    #[test]
    fn rogosinski_z_closed_form() {
        let f = z_times_identity(1);
        let expect = 1.0 - (2f64.sqrt() - 1.0) / 2.0;
        for variant in [RogosinskiVariant::A, RogosinskiVariant::B] {
            let lhs = rogosinski_lhs(&f, 1, 0.5, 0.0, variant).unwrap();
            assert!((lhs - expect).abs() < 1e-12, "{variant}: {lhs}");
        }
        let r = rogosinski_check(
            &f,
            1,
            0.5,
            RogosinskiVariant::A,
            64,
            Coupling::Coupled,
            1e-9,
        )
        .unwrap();
        assert!((r.min_margin - (2f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rogosinski_zero_function() {
        let f = MatrixPowerSeries::constant(ComplexMatrix::zeros(1).unwrap()).unwrap();
        for order in 1..4 {
            assert_eq!(
                rogosinski_lhs(&f, order, 0.3, PI, RogosinskiVariant::A).unwrap(),
                0.0
            );
            let b = rogosinski_lhs(&f, order, 0.3, PI, RogosinskiVariant::B).unwrap();
            assert!((b - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rogosinski_rejects_large_radius() {
        let f = z_times_identity(1);
        assert!(
            rogosinski_check(&f, 1, 0.6, RogosinskiVariant::A, 8, Coupling::Coupled, 1e-9).is_err()
        );
        assert!(
            rogosinski_check(&f, 0, 0.4, RogosinskiVariant::A, 8, Coupling::Coupled, 1e-9).is_err()
        );
    }

    #[test]
    fn uncoupled_sweep_is_report_mode() {
        let f = MatrixPowerSeries::real_polynomial(&[0.5, 0.5])
            .unwrap()
            .assume_norm_bound(1.0)
            .unwrap();
        let r = rogosinski_check(
            &f,
            1,
            0.5,
            RogosinskiVariant::A,
            32,
            Coupling::Uncoupled,
            1e-9,
        )
        .unwrap();
        assert_eq!(r.mode, Mode::Report);
        assert_eq!(r.inequality_id, "rogosinski_a_uncoupled");
    }
}
