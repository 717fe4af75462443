//! Seed-deterministic families of certified unit-ball test functions.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use super::{
    blaschke_series, mobius_series, subordinate_operator_function, MatrixPowerSeries, SchwarzSeries,
};
use crate::error::invalid;
use crate::math::{cis, TAU};
use crate::numerics::ComplexMatrix;
use crate::rng::{complex_in_square, point_in_disk, sample_rng, uniform};
use crate::{Error, Result};

use super::DEFAULT_BOUNDARY_GRID;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `((a − z)/(1 − az)) I` with `a = (j+1)/(samples+1)`; not random.
    Mobius,
    /// Random finite Blaschke products times `I`.
    Blaschke,
    /// Random matrix polynomials, normalized with a certified bound.
    PolyRandom,
    /// `((α − ψ)/(1 − ᾱψ)) I` for random `α` and random Schwarz `ψ`.
    Subordination,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Mobius => "mobius",
            FamilyKind::Blaschke => "blaschke",
            FamilyKind::PolyRandom => "poly_random",
            FamilyKind::Subordination => "subordination",
        }
    }

    /// Whether the generated functions are exact polynomials.
    pub fn is_polynomial(self) -> bool {
        matches!(self, FamilyKind::PolyRandom)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mobius" => Ok(FamilyKind::Mobius),
            "blaschke" => Ok(FamilyKind::Blaschke),
            "poly_random" => Ok(FamilyKind::PolyRandom),
            "subordination" => Ok(FamilyKind::Subordination),
            other => Err(invalid!("unknown family '{other}'")),
        }
    }
}

/// A family of test functions: kind, matrix size, degree and sampling.
///
/// For `PolyRandom` the degree is the maximum polynomial degree; the actual
/// degree of each sample is drawn from `1..=degree`. For the other kinds it
/// is the truncation degree.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub dim: usize,
    pub degree: usize,
    pub samples: usize,
    pub seed: u64,
    /// Force `A_0 = a_0 I` for random polynomials.
    pub scalar_constant_term: bool,
    /// Boundary grid used to certify random polynomials.
    pub boundary_grid: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, dim: usize, degree: usize, samples: usize, seed: u64) -> Self {
        Self {
            kind,
            dim,
            degree,
            samples,
            seed,
            scalar_constant_term: false,
            boundary_grid: DEFAULT_BOUNDARY_GRID,
        }
    }

    pub fn with_scalar_constant_term(mut self, yes: bool) -> Self {
        self.scalar_constant_term = yes;
        self
    }

    pub fn with_boundary_grid(mut self, grid: usize) -> Self {
        self.boundary_grid = grid;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(invalid!("family needs at least one sample"));
        }
        if self.dim == 0 {
            return Err(invalid!("matrix dimension must be at least 1"));
        }
        if self.degree == 0 {
            return Err(invalid!("family degree must be at least 1"));
        }
        Ok(())
    }

    /// Sample `index`; depends only on `(seed, index)` and the spec.
    pub fn sample(&self, index: usize) -> Result<MatrixPowerSeries> {
        self.validate()?;
        let mut rng = sample_rng(self.seed, index as u64);
        match self.kind {
            FamilyKind::Mobius => {
                let a = (index as f64 + 1.0) / (self.samples as f64 + 1.0);
                mobius_series(Complex64::new(a, 0.0), self.degree)?.tensor_identity(self.dim)
            }
            FamilyKind::Blaschke => {
                let count = rng.gen_range(1..=4);
                let zeros: Vec<Complex64> =
                    (0..count).map(|_| point_in_disk(&mut rng, 0.95)).collect();
                let unimodular = cis(TAU * rng.gen::<f64>());
                Ok(blaschke_series(&zeros, self.degree)?
                    .scale(unimodular)
                    .tensor_identity(self.dim)?)
            }
            FamilyKind::PolyRandom => {
                let degree = rng.gen_range(1..=self.degree);
                random_unit_polynomial(
                    &mut rng,
                    self.dim,
                    degree,
                    self.scalar_constant_term,
                    self.boundary_grid,
                )
            }
            FamilyKind::Subordination => {
                let alpha = point_in_disk(&mut rng, 0.9);
                let psi = random_schwarz(&mut rng, self.degree)?;
                subordinate_operator_function(alpha, &psi, self.dim, self.degree)
            }
        }
    }
}

/// A random matrix polynomial of exactly the given degree, scaled to a
/// certified unit bound. Coefficient `n` has entries uniform in the unit
/// square times `decay^n` for a random `decay ∈ (0.3, 1)`.
pub fn random_unit_polynomial(
    rng: &mut impl Rng,
    dim: usize,
    degree: usize,
    scalar_constant_term: bool,
    grid: usize,
) -> Result<MatrixPowerSeries> {
    let decay = uniform(rng, 0.3, 1.0);
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut weight = 1.0;
    for n in 0..=degree {
        let m = if n == 0 && scalar_constant_term {
            ComplexMatrix::scalar(dim, complex_in_square(rng) * weight)?
        } else {
            let entries = (0..dim * dim)
                .map(|_| complex_in_square(rng) * weight)
                .collect();
            ComplexMatrix::from_entries(dim, entries)?
        };
        coeffs.push(m);
        weight *= decay;
    }
    MatrixPowerSeries::polynomial(coeffs)?.normalize_to_unit_ball(grid)
}

/// `e^{iγ} z B(z)` with `B` a Blaschke product of 0 to 3 random zeros in
/// `|a| < 0.9`, truncated at `degree`.
pub fn random_schwarz(rng: &mut impl Rng, degree: usize) -> Result<SchwarzSeries> {
    let count = rng.gen_range(0..=3);
    let zeros: Vec<Complex64> = (0..count).map(|_| point_in_disk(rng, 0.9)).collect();
    let gamma = cis(TAU * rng.gen::<f64>());
    let phi = SchwarzSeries::from_blaschke(&zeros, degree)?;
    SchwarzSeries::new(phi.into_series().scale(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible() {
        for kind in [
            FamilyKind::Mobius,
            FamilyKind::Blaschke,
            FamilyKind::PolyRandom,
            FamilyKind::Subordination,
        ] {
            let spec = FamilySpec::new(kind, 2, 8, 5, 42).with_boundary_grid(256);
            let a = spec.sample(3).unwrap();
            let b = spec.sample(3).unwrap();
            assert_eq!(a, b, "{kind}");
            assert!(a.is_certified_unit(), "{kind}");
            assert_eq!(a.dim(), 2);
        }
    }

    #[test]
    fn mobius_family_parameters() {
        let spec = FamilySpec::new(FamilyKind::Mobius, 1, 4, 9, 0);
        let a: Vec<f64> = (0..9)
            .map(|i| spec.sample(i).unwrap().scalar_coeff(0).re)
            .collect();
        for (j, x) in a.iter().enumerate() {
            assert!((x - 0.1 * (j as f64 + 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn scalar_constant_term_is_respected() {
        let spec = FamilySpec::new(FamilyKind::PolyRandom, 4, 5, 3, 9)
            .with_scalar_constant_term(true)
            .with_boundary_grid(128);
        for i in 0..3 {
            assert!(spec.sample(i).unwrap().coeffs()[0]
                .as_scalar_multiple(0.0)
                .is_some());
        }
    }

    #[test]
    fn names_round_trip() {
        for kind in [
            FamilyKind::Mobius,
            FamilyKind::Blaschke,
            FamilyKind::PolyRandom,
            FamilyKind::Subordination,
        ] {
            assert_eq!(kind.name().parse::<FamilyKind>().unwrap(), kind);
        }
        assert!("nope".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn empty_family_is_rejected() {
        assert!(FamilySpec::new(FamilyKind::Mobius, 1, 4, 0, 0)
            .sample(0)
            .is_err());
    }
}
