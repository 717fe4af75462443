use alloc::format;
use alloc::vec::Vec;

use crate::error::invalid;
use crate::inequalities::{fingerprint, VerificationReport};
use crate::math::powf;
use crate::numerics::{bisect_interval, Bracket, DEFAULT_NORM_TOL};
use crate::series::family::FamilySpec;
use crate::series::MatrixPowerSeries;
use crate::{Error, Result};

/// `(p, N, tol)` for the p-Bohr radius of order N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusParams {
    p: f64,
    order: usize,
    tol: f64,
}

impl RadiusParams {
    pub fn new(p: f64, order: usize, tol: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(invalid!("p must be finite and at least 1, got {p}"));
        }
        if order == 0 {
            return Err(invalid!("order N must be at least 1"));
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(invalid!("tolerance must be positive, got {tol}"));
        }
        Ok(Self { p, order, tol })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadiusKind {
    /// Computed for a single function to within the bracket width.
    ExactScalar,
    /// Minimum over a sampled family: an upper bound for the infimum.
    FamilyUpper,
    /// Radius of one explicit witness function: an upper bound for the
    /// space's radius.
    WitnessBound,
}

impl RadiusKind {
    pub fn name(self) -> &'static str {
        match self {
            RadiusKind::ExactScalar => "exact_scalar",
            RadiusKind::FamilyUpper => "family_upper",
            RadiusKind::WitnessBound => "witness_bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEstimate {
    pub value: f64,
    pub bracket_width: f64,
    pub kind: RadiusKind,
}

impl RadiusEstimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            bracket_width: 0.0,
            kind: RadiusKind::ExactScalar,
        }
    }

    /// Minimum over per-function estimates, labeled as a family upper bound.
    pub fn family_min(estimates: impl IntoIterator<Item = RadiusEstimate>) -> Result<Self> {
        let mut out: Option<Self> = None;
        let mut width: f64 = 0.0;
        for e in estimates {
            width = width.max(e.bracket_width);
            if out.is_none_or(|o| e.value < o.value) {
                out = Some(e);
            }
        }
        let best = out.ok_or_else(|| invalid!("empty family"))?;
        Ok(Self {
            value: best.value,
            bracket_width: width,
            kind: RadiusKind::FamilyUpper,
        })
    }
}

/// `Σ_{k=0}^{N} ‖x_k‖^p r^{pk}` with `N = norms.len() − 1`.
pub fn bohr_functional(norms: &[f64], p: f64, r: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(invalid!("p must be at least 1, got {p}"));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(invalid!("radius must lie in [0, 1], got {r}"));
    }
    if let Some(bad) = norms.iter().find(|&&n| !(n >= 0.0)) {
        return Err(invalid!("norms must be nonnegative, got {bad}"));
    }
    Ok(functional_unchecked(norms, p, r))
}

fn functional_unchecked(norms: &[f64], p: f64, r: f64) -> f64 {
    let rp = powf(r, p);
    norms
        .iter()
        .rev()
        .fold(0.0, |acc, &n| acc * rp + powf(n, p))
}

/// Roundoff allowance for the endpoint decisions: coefficient norms of
/// exactly-unimodular data come out a few ulps high.
const FUNCTIONAL_SLACK: f64 = 1e-12;

/// Largest `r ∈ [0, 1]` with `Σ_{k≤N} norms_k^p r^{pk} ≤ 1`, by bisection.
pub fn radius_from_norms(norms: &[f64], p: f64, tol: f64) -> Result<RadiusEstimate> {
    let g = |r: f64| functional_unchecked(norms, p, r) - 1.0;
    bohr_functional(norms, p, 0.0)?;
    if g(1.0) <= FUNCTIONAL_SLACK {
        return Ok(RadiusEstimate::exact(1.0));
    }
    if g(0.0) > FUNCTIONAL_SLACK {
        return Ok(RadiusEstimate::exact(0.0));
    }
    if g(0.0) >= 0.0 {
        // ‖x_0‖ = 1 up to roundoff: the functional exceeds 1 for every r > 0.
        return Ok(RadiusEstimate::exact(0.0));
    }
    let (lo, hi) = bisect_interval(g, &Bracket::new(0.0, 1.0, tol)?)?;
    Ok(RadiusEstimate {
        value: lo + 0.5 * (hi - lo),
        bracket_width: hi - lo,
        kind: RadiusKind::ExactScalar,
    })
}

/// Coefficient norms `‖x_0‖..‖x_N‖`; zero beyond the degree of a
/// polynomial, an error beyond the degree of a truncated series.
pub fn leading_norms(f: &MatrixPowerSeries, order: usize) -> Result<Vec<f64>> {
    if order > f.degree() && !f.is_polynomial() {
        return Err(invalid!(
            "order {order} exceeds the known degree {} of a truncated series",
            f.degree()
        ));
    }
    let mut norms = f.coefficient_norms(DEFAULT_NORM_TOL)?;
    norms.resize(order + 1, 0.0);
    Ok(norms)
}

/// `R̃_{p,N}(f)` for a certified unit-ball function.
pub fn function_radius(f: &MatrixPowerSeries, params: &RadiusParams) -> Result<RadiusEstimate> {
    if !f.is_certified_unit() {
        return Err(Error::MissingCertificate);
    }
    radius_from_norms(&leading_norms(f, params.order)?, params.p, params.tol)
}

/// `r_p(f)`: the same functional over every stored coefficient.
pub fn full_series_radius(f: &MatrixPowerSeries, p: f64, tol: f64) -> Result<RadiusEstimate> {
    if !f.is_certified_unit() {
        return Err(Error::MissingCertificate);
    }
    radius_from_norms(&f.coefficient_norms(DEFAULT_NORM_TOL)?, p, tol)
}

/// Minimum of [`function_radius`] over a sampled family.
pub fn family_radius_inf(family: &FamilySpec, params: &RadiusParams) -> Result<RadiusEstimate> {
    family.validate()?;
    let per_sample = (0..family.samples)
        .map(|i| function_radius(&family.sample(i)?, params))
        .collect::<Result<Vec<_>>>()?;
    RadiusEstimate::family_min(per_sample)
}

/// The three radii of one function used by the ordering check:
/// `(r_p(f), R̃_{p,N}(f), R̃_{p,1}(f))`.
pub fn radius_triple(f: &MatrixPowerSeries, params: &RadiusParams) -> Result<[RadiusEstimate; 3]> {
    let full = full_series_radius(f, params.p, params.tol)?;
    let order_n = function_radius(f, params)?;
    let order_one = function_radius(f, &RadiusParams::new(params.p, 1, params.tol)?)?;
    Ok([full, order_n, order_one])
}

/// Records `r_p ≤ R̃_{p,N} ≤ R̃_{p,1}` for one sample. The order is at most
/// the degree here, so the inequalities hold termwise up to bisection
/// width.
pub fn record_radius_ordering(
    report: &mut VerificationReport,
    sample: usize,
    f: &MatrixPowerSeries,
    params: &RadiusParams,
) -> Result<[RadiusEstimate; 3]> {
    let [full, order_n, order_one] = radius_triple(f, params)?;
    let width = full.bracket_width + order_n.bracket_width + order_one.bracket_width;
    let margin = (order_n.value - full.value).min(order_one.value - order_n.value) + width;
    report.record(sample, margin, || {
        format!(
            "{} r_p={} R_N={} R_1={}",
            fingerprint(f),
            full.value,
            order_n.value,
            order_one.value
        )
    });
    Ok([full, order_n, order_one])
}
