use bohr_core::rng::{point_in_disk, sample_rng};
use bohr_core::series::family::{random_unit_polynomial, FamilyKind, FamilySpec};
use bohr_core::series::mobius_series;
use bohr_core::{Complex64, ComplexMatrix, MatrixPowerSeries, SchwarzSeries};
use proptest::prelude::*;

fn poly(seed: u64, index: u64, d: usize, degree: usize) -> MatrixPowerSeries {
    let mut rng = sample_rng(seed, index);
    random_unit_polynomial(&mut rng, d, degree, false, 256).unwrap()
}

#[test]
fn mobius_evaluation_matches_closed_form() {
    for i in 0..50 {
        let mut rng = sample_rng(5, i);
        let alpha = point_in_disk(&mut rng, 0.9);
        let z = point_in_disk(&mut rng, 0.5);
        let f = mobius_series(alpha, 60).unwrap();
        let exact = (alpha - z) / (Complex64::new(1.0, 0.0) - alpha.conj() * z);
        let tail = 2.0 * z.norm().powi(61) / (1.0 - z.norm());
        assert!((f.evaluate(z).get(0, 0) - exact).norm() <= tail + 1e-14);
    }
}

#[test]
fn family_samples_respect_their_certificates() {
    for kind in [
        FamilyKind::Mobius,
        FamilyKind::Blaschke,
        FamilyKind::PolyRandom,
        FamilyKind::Subordination,
    ] {
        let spec = FamilySpec::new(kind, 2, 64, 8, 77).with_boundary_grid(512);
        for i in 0..8 {
            let f = spec.sample(i).unwrap();
            assert!(f.is_certified_unit());
            // Truncated series only approximate the certified function; the
            // dropped tail is at most 2ρ^{D+1}/(1 − ρ).
            let rho: f64 = if f.is_polynomial() { 0.999 } else { 0.8 };
            let tail = if f.is_polynomial() {
                0.0
            } else {
                2.0 * rho.powi(f.degree() as i32 + 1) / (1.0 - rho)
            };
            let sup = f.boundary_sup_estimate(rho, 512).unwrap();
            assert!(
                sup.lower <= 1.0 + tail + 1e-9,
                "{kind} sample {i}: {}",
                sup.lower
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn majorant_is_subadditive_and_submultiplicative(seed in any::<u64>(), d in 1usize..4, r in 0.0f64..1.0) {
        let f = poly(seed, 0, d, 5);
        let g = poly(seed, 1, d, 4);
        let (mf, mg) = (f.majorant(r).unwrap(), g.majorant(r).unwrap());
        prop_assert!(f.add(&g).unwrap().majorant(r).unwrap() <= mf + mg + 1e-9);
        let fg = f.cauchy_product(&g, 9).unwrap();
        prop_assert!(fg.majorant(r).unwrap() <= mf * mg + 1e-9);
    }

    #[test]
    fn majorant_scales_and_shifts(seed in any::<u64>(), r in 0.0f64..1.0, k in 0usize..4) {
        let f = poly(seed, 2, 2, 4);
        let c = Complex64::new(0.3, -0.4);
        prop_assert!((f.scale(c).majorant(r).unwrap() - 0.5 * f.majorant(r).unwrap()).abs() < 1e-10);
        prop_assert!((f.shift(k).majorant(r).unwrap() - r.powi(k as i32) * f.majorant(r).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn rotation_round_trip_is_exact(seed in any::<u64>(), t in -10.0f64..10.0) {
        let f = poly(seed, 3, 2, 5);
        let back = f.rotate_coefficients(t).rotate_coefficients(-t);
        for (a, b) in f.coeffs().iter().zip(back.coeffs()) {
            prop_assert!(a.max_abs_diff(b).unwrap() < 1e-14);
        }
    }

    #[test]
    fn rotation_average_filters_indices(seed in any::<u64>(), n in 1usize..5) {
        let f = poly(seed, 4, 2, 8);
        let g = f.rotation_average(n).unwrap();
        for (k, (a, b)) in f.coeffs().iter().zip(g.coeffs()).enumerate() {
            if k % n == 0 {
                prop_assert_eq!(a, b);
            } else {
                prop_assert!(b.is_zero());
            }
        }
    }

    #[test]
    fn composition_with_identity_is_identity(seed in any::<u64>()) {
        let f = poly(seed, 5, 2, 6);
        let g = f.compose(&SchwarzSeries::identity(), 6).unwrap();
        for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
            prop_assert!(a.max_abs_diff(b).unwrap() == 0.0);
        }
    }

    #[test]
    fn product_with_one_is_identity(seed in any::<u64>()) {
        let f = poly(seed, 6, 3, 4);
        let one = MatrixPowerSeries::constant(ComplexMatrix::identity(3).unwrap()).unwrap();
        let g = f.cauchy_product(&one, 4).unwrap();
        prop_assert_eq!(f.coeffs(), g.coeffs());
    }
}
