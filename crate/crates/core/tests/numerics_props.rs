use bohr_core::numerics::{bisect_interval, minimize_1d, operator_norm, Bracket};
use bohr_core::rng::{complex_in_square, sample_rng};
use bohr_core::{Complex64, ComplexMatrix};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn random_matrix(seed: u64, index: u64, d: usize) -> ComplexMatrix {
    let mut rng = sample_rng(seed, index);
    ComplexMatrix::from_entries(d, (0..d * d).map(|_| complex_in_square(&mut rng)).collect())
        .unwrap()
}

/// Modified Gram-Schmidt on the columns.
fn unitary(seed: u64, index: u64, d: usize) -> ComplexMatrix {
    let m = random_matrix(seed, index, d);
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|j| (0..d).map(|i| m.get(i, j)).collect())
        .collect();
    for j in 0..d {
        for k in 0..j {
            let proj: Complex64 = (0..d).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..d {
                let v = cols[k][i];
                cols[j][i] -= proj * v;
            }
        }
        let n = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= n);
    }
    let mut u = ComplexMatrix::zeros(d).unwrap();
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u.set(i, j, z);
        }
    }
    u
}

#[test]
fn unitary_invariance_over_seeded_pairs() {
    for i in 0..1000u64 {
        let d = 2 + (i % 4) as usize;
        let a = random_matrix(11, i, d);
        let u = unitary(12, i, d);
        let v = unitary(13, i, d);
        let uav = u.mul(&a).unwrap().mul(&v).unwrap();
        let lhs = operator_norm(&uav, TOL).unwrap();
        let rhs = operator_norm(&a, TOL).unwrap();
        assert!((lhs - rhs).abs() < 1e-9, "pair {i}: {lhs} vs {rhs}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_subadditive_and_submultiplicative(seed in any::<u64>(), d in 1usize..6) {
        let a = random_matrix(seed, 0, d);
        let b = random_matrix(seed, 1, d);
        let na = operator_norm(&a, TOL).unwrap();
        let nb = operator_norm(&b, TOL).unwrap();
        prop_assert!(operator_norm(&a.add(&b).unwrap(), TOL).unwrap() <= na + nb + 3.0 * TOL);
        prop_assert!(operator_norm(&a.mul(&b).unwrap(), TOL).unwrap() <= na * nb + TOL * (na + nb + 1.0));
    }

    #[test]
    fn norm_is_homogeneous(seed in any::<u64>(), d in 1usize..6, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let a = random_matrix(seed, 2, d);
        let c = Complex64::new(re, im);
        let scaled = operator_norm(&a.scale(c), TOL).unwrap();
        prop_assert!((scaled - c.norm() * operator_norm(&a, TOL).unwrap()).abs() <= 1e-11 * (1.0 + c.norm()));
    }

    #[test]
    fn norm_bounds_frobenius(seed in any::<u64>(), d in 1usize..6) {
        let a = random_matrix(seed, 3, d);
        let n = operator_norm(&a, TOL).unwrap();
        let f = a.frobenius_norm();
        prop_assert!(n <= f + TOL && n >= f / (d as f64).sqrt() - TOL);
    }

    #[test]
    fn bisection_bracket_contains_root(c in 0.01f64..0.99) {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        let f = |x: f64| x * x * x + x - c;
        let (lo, hi) = bisect_interval(f, &b).unwrap();
        prop_assert!(hi - lo <= 1e-12);
        prop_assert!(f(lo) <= 0.0 && f(hi) >= 0.0);
    }

    #[test]
    fn minimize_matches_denser_grid(center in 0.05f64..0.95, width in 0.5f64..4.0) {
        let f = |x: f64| width * (x - center).powi(2) + (x - center).powi(4);
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        let (_, coarse) = minimize_1d(f, &b, 64).unwrap();
        let (_, dense) = minimize_1d(f, &b, 640).unwrap();
        prop_assert!((coarse - dense).abs() <= 1e-10);
    }
}
