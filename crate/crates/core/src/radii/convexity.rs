//! Sampled estimates of the p-uniform ℂ-convexity constant of order N.
//!
//! For a tuple `(x_0, …, x_N)` the largest admissible λ is
//! `sup{λ : ‖x_0‖^p + Σ_k λ^k ‖x_k‖^p ≤ max_θ ‖x_0 + Σ_k phase(θ, k) x_k‖^p}`.
//! The constant is the infimum over all tuples, so the minimum over sampled
//! tuples is an upper bound.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::invalid;
use crate::math::{cis, powf, powi, TAU};
use crate::numerics::{bisect_interval, minimize_1d, Bracket};
use crate::rng::{complex_in_square, sample_rng};
use crate::{Error, Result};

pub const DEFAULT_THETA_GRID: usize = 512;

/// Relative bisection tolerance for λ.
const LAMBDA_TOL: f64 = 1e-12;

const ROUNDOFF: f64 = 1e-12;

/// λ beyond this is treated as unconstrained.
const LAMBDA_CAP: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Space {
    ComplexScalars,
    /// `ℂ^d` with the ℓ_q norm.
    Lq {
        q: f64,
        d: usize,
    },
}

impl Space {
    pub fn dim(&self) -> usize {
        match *self {
            Space::ComplexScalars => 1,
            Space::Lq { d, .. } => d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Space::Lq { q, d } = *self {
            if !(q >= 1.0) || !q.is_finite() {
                return Err(invalid!("l_q space needs finite q >= 1, got {q}"));
            }
            if d == 0 {
                return Err(invalid!("l_q space needs d >= 1"));
            }
        }
        Ok(())
    }

    pub fn norm(&self, v: &[Complex64]) -> f64 {
        match *self {
            Space::ComplexScalars => v.first().map_or(0.0, |z| z.norm()),
            Space::Lq { q, .. } => lq_norm(v, q),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::ComplexScalars => f.write_str("C"),
            Space::Lq { q, d } => write!(f, "l_{q}^{d}"),
        }
    }
}

/// `(Σ |v_i|^q)^{1/q}`.
pub fn lq_norm(v: &[Complex64], q: f64) -> f64 {
    let scale = v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = v.iter().map(|z| powf(z.norm() / scale, q)).sum();
    scale * powf(sum, 1.0 / q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PhaseConvention {
    /// One factor `e^{iθ}` on every `x_k`.
    CommonPhase,
    /// `e^{ikθ}` on `x_k`.
    #[default]
    PowerPhase,
}

impl PhaseConvention {
    pub fn name(self) -> &'static str {
        match self {
            PhaseConvention::CommonPhase => "common_phase",
            PhaseConvention::PowerPhase => "power_phase",
        }
    }

    fn phase(self, theta: f64, k: usize) -> Complex64 {
        match self {
            PhaseConvention::CommonPhase => cis(theta),
            PhaseConvention::PowerPhase => cis(theta * k as f64),
        }
    }
}

impl fmt::Display for PhaseConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PhaseConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "common_phase" => Ok(PhaseConvention::CommonPhase),
            "power_phase" => Ok(PhaseConvention::PowerPhase),
            other => Err(invalid!("unknown phase convention '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityEstimate {
    pub lambda_upper: f64,
    pub phase_convention: PhaseConvention,
    pub samples: usize,
    pub seed: u64,
    pub p: f64,
    pub order: usize,
    pub space: Space,
    /// Tuples with `x_1 = … = x_N = 0`, which do not constrain λ.
    pub skipped: usize,
}

/// `max_θ ‖x_0 + Σ_k phase(θ, k) x_k‖` over a uniform grid, refined by a
/// golden-section search around the best grid point.
pub fn phase_max_norm(
    tuple: &[Vec<Complex64>],
    space: Space,
    convention: PhaseConvention,
    theta_grid: usize,
) -> Result<f64> {
    if theta_grid < 3 {
        return Err(invalid!(
            "theta grid needs at least 3 points, got {theta_grid}"
        ));
    }
    let d = space.dim();
    let mut buf = alloc::vec![Complex64::new(0.0, 0.0); d];
    let mut eval = |theta: f64| {
        buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for (k, x) in tuple.iter().enumerate() {
            let w = if k == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                convention.phase(theta, k)
            };
            for (b, xi) in buf.iter_mut().zip(x) {
                *b += w * xi;
            }
        }
        space.norm(&buf)
    };
    let step = TAU / theta_grid as f64;
    let (mut best_theta, mut best) = (0.0, eval(0.0));
    for j in 1..theta_grid {
        let theta = step * j as f64;
        let v = eval(theta);
        if v > best {
            best = v;
            best_theta = theta;
        }
    }
    let bracket = Bracket::new(best_theta - step, best_theta + step, 1e-12)?;
    let (_, neg) = minimize_1d(|t| -eval(t), &bracket, 3)?;
    Ok(best.max(-neg))
}

/// Largest λ for one tuple, or `None` when every `x_k` with `k ≥ 1` is zero.
pub fn tuple_lambda_max(
    p: f64,
    tuple: &[Vec<Complex64>],
    space: Space,
    convention: PhaseConvention,
    theta_grid: usize,
) -> Result<Option<f64>> {
    if tuple.len() < 2 {
        return Err(invalid!("tuple needs x_0 and at least one x_k"));
    }
    if let Some(bad) = tuple.iter().find(|x| x.len() != space.dim()) {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: bad.len(),
        });
    }
    let norms: Vec<f64> = tuple.iter().map(|x| powf(space.norm(x), p)).collect();
    if norms[1..].iter().all(|&n| n == 0.0) {
        return Ok(None);
    }
    let rhs = powf(phase_max_norm(tuple, space, convention, theta_grid)?, p);
    let slack = |lambda: f64| {
        let lhs: f64 = norms[0]
            + norms[1..]
                .iter()
                .enumerate()
                .map(|(k, n)| n * powi(lambda, k as i32 + 1))
                .sum::<f64>();
        lhs - rhs
    };
    // Cancelling tuples reach equality at λ = 0 only up to roundoff.
    if slack(0.0) >= -ROUNDOFF * rhs.max(norms[0]) {
        return Ok(Some(0.0));
    }
    let mut hi = 1.0;
    while slack(hi) <= 0.0 {
        hi *= 2.0;
        if hi > LAMBDA_CAP {
            return Ok(Some(LAMBDA_CAP));
        }
    }
    let (lo, hi) = bisect_interval(slack, &Bracket::new(0.0, hi, LAMBDA_TOL * hi)?)?;
    Ok(Some(lo + 0.5 * (hi - lo)))
}

/// Tuple `index` of the structured sampler: plain random, `x_0 = 0`, tiny
/// `x_0`, a single nonzero `x_k`, and a cancelling tuple with
/// `Σ_{k≥1} x_k = 0`, in rotation.
pub fn sample_tuple(order: usize, space: Space, seed: u64, index: usize) -> Vec<Vec<Complex64>> {
    let mut rng = sample_rng(seed, index as u64);
    let d = space.dim();
    let vec = |rng: &mut crate::rng::SampleRng| {
        (0..d).map(|_| complex_in_square(rng)).collect::<Vec<_>>()
    };
    let mut tuple: Vec<Vec<Complex64>> = (0..=order).map(|_| vec(&mut rng)).collect();
    let zero = Complex64::new(0.0, 0.0);
    match index % 5 {
        1 => tuple[0].iter_mut().for_each(|z| *z = zero),
        2 => tuple[0].iter_mut().for_each(|z| *z *= 1e-3),
        3 => {
            let keep = rng.gen_range(1..=order);
            for (k, x) in tuple.iter_mut().enumerate().skip(1) {
                if k != keep {
                    x.iter_mut().for_each(|z| *z = zero);
                }
            }
        }
        4 => {
            let mut sum = alloc::vec![zero; d];
            for x in &tuple[1..order] {
                for (s, z) in sum.iter_mut().zip(x) {
                    *s += z;
                }
            }
            for (z, s) in tuple[order].iter_mut().zip(sum) {
                *z = -s;
            }
        }
        _ => {}
    }
    tuple
}

/// Minimum of [`tuple_lambda_max`] over `samples` structured random tuples.
pub fn estimate_a_pn(
    p: f64,
    order: usize,
    space: Space,
    convention: PhaseConvention,
    samples: usize,
    seed: u64,
) -> Result<ConvexityEstimate> {
    estimate_a_pn_with_grid(
        p,
        order,
        space,
        convention,
        samples,
        seed,
        DEFAULT_THETA_GRID,
    )
}

pub fn estimate_a_pn_with_grid(
    p: f64,
    order: usize,
    space: Space,
    convention: PhaseConvention,
    samples: usize,
    seed: u64,
    theta_grid: usize,
) -> Result<ConvexityEstimate> {
    validate_convexity(p, order, space, samples)?;
    let values = (0..samples)
        .map(|i| {
            tuple_lambda_max(
                p,
                &sample_tuple(order, space, seed, i),
                space,
                convention,
                theta_grid,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    from_tuple_values(p, order, space, convention, seed, &values)
}

/// Checks the inputs of an estimate: `p ≥ 2`, `N ≥ 1`, at least one sample.
pub fn validate_convexity(p: f64, order: usize, space: Space, samples: usize) -> Result<()> {
    if !(p >= 2.0) || !p.is_finite() {
        return Err(invalid!("convexity constant needs p >= 2, got {p}"));
    }
    if order == 0 {
        return Err(invalid!("order N must be at least 1"));
    }
    if samples == 0 {
        return Err(invalid!("convexity estimate needs at least one sample"));
    }
    space.validate()
}

/// Folds per-tuple values (in sample order) into an estimate.
pub fn from_tuple_values(
    p: f64,
    order: usize,
    space: Space,
    convention: PhaseConvention,
    seed: u64,
    values: &[Option<f64>],
) -> Result<ConvexityEstimate> {
    let skipped = values.iter().filter(|v| v.is_none()).count();
    let lambda_upper = values
        .iter()
        .flatten()
        .copied()
        .reduce(f64::min)
        .ok_or_else(|| invalid!("every sampled tuple was unconstrained"))?;
    Ok(ConvexityEstimate {
        lambda_upper,
        phase_convention: convention,
        samples: values.len(),
        seed,
        p,
        order,
        space,
        skipped,
    })
}
