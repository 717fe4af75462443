//! Seed-deterministic sampling helpers.
//!
//! Every randomized sweep derives one independent ChaCha stream per sample
//! index from the run seed, so a sample depends only on `(seed, index)` and
//! sweeps can be evaluated in any order or in parallel.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::math::{cis, sqrt, TAU};

pub type SampleRng = ChaCha8Rng;

/// The generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

/// Uniform (by area) point of the disk `|z| < radius`.
pub fn point_in_disk(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let rho = radius * sqrt(rng.gen::<f64>());
    cis(TAU * rng.gen::<f64>()) * rho
}

/// Both parts uniform on `[-1, 1]`.
pub fn complex_in_square(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0))
}
