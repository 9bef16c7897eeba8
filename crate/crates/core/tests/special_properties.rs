mod common;

use frackin::special::{
    generalized_struve, mittag_leffler, reciprocal_gamma, struve_h, struve_h_derivatives,
    struve_terms, SeriesSpec, StruveKind,
};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

// z = n/64 keeps z² exact, so E_{2,β}(-z²) is compared at exactly the
// argument the trigonometric side sees.
fn grid_z() -> impl Strategy<Value = f64> {
    (-640i32..=640)
        .prop_filter("nonzero", |n| *n != 0)
        .prop_map(|n| n as f64 / 64.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mittag_leffler_elementary_cases(z in grid_z()) {
        prop_assert!(rel(mittag_leffler(1.0, 1.0, z).unwrap(), z.exp()) <= 1e-10);
        prop_assert!(rel(mittag_leffler(1.0, 2.0, z).unwrap(), z.exp_m1() / z) <= 1e-10);
        prop_assert!(rel(mittag_leffler(2.0, 1.0, -z * z).unwrap(), z.cos()) <= 1e-10);
        prop_assert!(rel(mittag_leffler(2.0, 2.0, -z * z).unwrap(), z.sin() / z) <= 1e-10);
    }

    #[test]
    fn mittag_leffler_matches_brute_force(alpha in 0.5f64..2.0, beta in 0.5f64..3.0, z in -5.0f64..5.0) {
        let lib = mittag_leffler(alpha, beta, z).unwrap();
        let oracle = common::mittag_leffler(alpha, beta, z).f64();
        prop_assert!((lib - oracle).abs() <= 1e-10 * oracle.abs().max(1e-300), "{lib} vs {oracle}");
    }

    #[test]
    fn generalized_reduces_to_struve(z in 0.1f64..10.0, i in 0usize..4) {
        let order = [0.0, 0.5, 1.0, 2.0][i];
        let spec = SeriesSpec::new(1.0, 1.0, 1.5, order).unwrap();
        prop_assert!(rel(generalized_struve(&spec, z).unwrap(), struve_h(order, z).unwrap()) <= 1e-12);
    }

    #[test]
    fn special_case_families_match_literal_series(
        lambda in 0.5f64..3.0,
        alpha in 0.5f64..3.0,
        m in 0.5f64..4.0,
        order in -0.5f64..2.0,
        z in 0.1f64..3.0,
    ) {
        // Bhowmick: Γ(λk+l+3/2) Γ(k+3/2)
        let lit = common::struve_series(lambda, 1.0, 1.5, order, order + 1.5, z, true).f64();
        let lib = generalized_struve(&SeriesSpec::bhowmick(lambda, order).unwrap(), z).unwrap();
        prop_assert!(rel(lib, lit) <= 1e-12, "Bhowmick {lib} vs {lit}");
        // Kant: Γ(λk+l+3/2) Γ(αk+3/2)
        let lit = common::struve_series(lambda, alpha, 1.5, order, order + 1.5, z, true).f64();
        let lib = generalized_struve(&SeriesSpec::kant(lambda, alpha, order).unwrap(), z).unwrap();
        prop_assert!(rel(lib, lit) <= 1e-12, "Kant {lib} vs {lit}");
        // Singh: Γ(λk+l/m+3/2) Γ(k+3/2), power 2k+l+1
        let lit = common::struve_series(lambda, 1.0, 1.5, order, order / m + 1.5, z, true).f64();
        let lib = generalized_struve(&SeriesSpec::singh(lambda, m, order).unwrap(), z).unwrap();
        prop_assert!(rel(lib, lit) <= 1e-12, "Singh {lib} vs {lit}");
    }

    #[test]
    fn struve_solves_inhomogeneous_bessel_equation(x in 0.1f64..5.0, i in 0usize..3) {
        let v = [0.0, 0.5, 1.0][i];
        let (y, dy, d2y) = struve_h_derivatives(v, x).unwrap();
        let rhs = 4.0 * (0.5 * x).powf(v + 1.0) * reciprocal_gamma(v + 0.5) / std::f64::consts::PI.sqrt();
        let residual = x * x * d2y + x * dy + (x * x - v * v) * y - rhs;
        prop_assert!(residual.abs() <= 1e-8 * (1.0 + y.abs()), "residual {residual}");
    }

    #[test]
    fn modified_partial_sums_dominate(v in -0.5f64..3.0, z in 0.0f64..20.0, count in 1usize..40) {
        let h = struve_terms(StruveKind::H, v, z, count).unwrap();
        let l = struve_terms(StruveKind::L, v, z, count).unwrap();
        let mut sh = 0.0;
        let mut sl = 0.0;
        for (k, (a, b)) in h.iter().zip(&l).enumerate() {
            prop_assert!(*b >= 0.0);
            prop_assert_eq!(a.abs(), *b);
            prop_assert_eq!(*a, if k % 2 == 0 { *b } else { -*b });
            sh += a;
            sl += b;
            prop_assert!(sl.abs() >= sh.abs());
        }
    }

    #[test]
    fn poles_in_the_coefficients_are_skipped(z in 0.1f64..3.0) {
        // k/2 - 1 is a pole of Γ at k = 0 and k = 2; those terms drop out
        let spec = SeriesSpec::new(1.0, 0.5, -1.0, 0.5).unwrap();
        let lib = generalized_struve(&spec, z).unwrap();
        let half = 0.5 * z;
        let mut lit = 0.0;
        for k in 0..60 {
            let kf = k as f64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            lit += sign * half.powf(2.0 * kf + 1.5) * reciprocal_gamma(0.5 * kf - 1.0) * reciprocal_gamma(kf + 2.0);
        }
        prop_assert!((lib - lit).abs() <= 1e-13 * lit.abs().max(1e-3));
    }
}
