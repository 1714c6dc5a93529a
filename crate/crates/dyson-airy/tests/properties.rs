use dyson_airy::config::Transform;
use dyson_airy::kernels::{chapman_kolmogorov, ChapmanKolmogorov};
use dyson_airy::Configuration;
use proptest::prelude::*;

fn points() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-50.0f64..50.0, 1..20).prop_filter("nonzero atoms", |v| v.iter().all(|x| x.abs() > 1e-3))
}

proptest! {
    #[test]
    fn shift_round_trip(pts in points(), u in -10.0f64..10.0) {
        let xi = Configuration::from_points(&pts).unwrap();
        let back = xi.transform(Transform::Shift(u)).transform(Transform::Shift(-u));
        prop_assert_eq!(back.mass(), xi.mass());
        for (a, b) in back.points().iter().zip(xi.points()) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn squaring_halves_the_exponent(pts in points()) {
        let xi = Configuration::from_points(&pts).unwrap();
        let lhs = xi.transform(Transform::Square).m_alpha(1.0, None);
        let rhs = xi.m_alpha(2.0, None).powi(2);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn semigroups_close(s in 0.2f64..1.5, gap in 0.2f64..1.2, x in -3.0f64..3.0, z in -3.0f64..3.0) {
        for family in ChapmanKolmogorov::ALL {
            let r = chapman_kolmogorov(family, s, s + gap, x, z).unwrap();
            prop_assert!(r.relative < 1e-8, "{:?}", r);
        }
    }
}
