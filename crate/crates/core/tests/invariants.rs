use proptest::prelude::*;

use rhi::classconst::{a_bar, c_class, majorant, majorant_bound};
use rhi::means::{quad_mean, FunctionSpec};
use rhi::power::{c_eps, maximize_c};
use rhi::{ExponentPair, Interval, SearchConfig};

/// Pairs from all three sign cases.
fn pairs() -> impl Strategy<Value = ExponentPair> {
    prop_oneof![
        (0.1f64..4.0, 0.05f64..4.0).prop_map(|(a, d)| (a, a + d)),
        (-4.0f64..-0.1, 0.05f64..4.0).prop_map(|(b, d)| (b - d, b)),
        (-4.0f64..-0.1, 0.1f64..4.0),
    ]
    .prop_map(|(a, b)| ExponentPair::new(a, b).unwrap())
}

fn admissible() -> impl Strategy<Value = (ExponentPair, f64)> {
    (pairs(), -6.0f64..6.0).prop_filter("gamma outside the domain", |(p, g)| {
        g.abs() > 1e-3 && p.gamma_domain().contains(*g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn curve_exceeds_one_inside((p, g) in admissible(), eps in 0.001f64..0.999) {
        prop_assert!(c_eps(&p, g, eps).unwrap() > 1.0);
    }

    #[test]
    fn curve_under_its_majorant((p, g) in admissible(), eps in 0.0f64..=1.0) {
        let c = c_eps(&p, g, eps).unwrap();
        prop_assert!(c <= majorant(&p, g, eps).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn curve_maximum_under_class_bounds((p, g) in admissible()) {
        let m = maximize_c(&p, g, &SearchConfig::default()).unwrap();
        prop_assert!(m.c_max <= majorant_bound(&p, g).unwrap() * (1.0 + 1e-12));
        prop_assert!(m.c_max <= c_class(&p).0 * (1.0 + 1e-12));
        prop_assert!(c_class(&p).0 <= a_bar(&p));
    }

    #[test]
    fn curves_ordered_by_gamma((p, g1) in admissible(), t in 0.05f64..0.95, eps in 0.01f64..0.99) {
        // a second admissible gamma of the same sign, closer to zero
        let g2 = g1 * t;
        prop_assume!((g1 - g2).abs() > 1e-6);
        let (outer, inner) = (c_eps(&p, g1, eps).unwrap(), c_eps(&p, g2, eps).unwrap());
        // strict in exact arithmetic; the gap can fall below f64 resolution
        prop_assert!(outer >= inner, "gamma {g1} -> {outer}, gamma {g2} -> {inner}");
    }

    #[test]
    fn means_increase_with_order(g in -0.4f64..3.0, lo in 0.0f64..2.0, w in 0.01f64..5.0, r in -2.0f64..3.0, d in 0.1f64..2.0) {
        let f = FunctionSpec::power_law(g).unwrap();
        let i = Interval::new(lo, lo + w).unwrap();
        let (r1, r2) = if r.abs() < 0.05 { (0.5, 0.5 + d) } else { (r, r + d) };
        prop_assume!(r1 * g > -0.9 && r2 * g > -0.9 && r2.abs() > 0.05);
        let m1 = quad_mean(&f, i, r1, 1e-10).unwrap().value;
        let m2 = quad_mean(&f, i, r2, 1e-10).unwrap().value;
        prop_assert!(m1 <= m2 * (1.0 + 1e-9), "M_{r1} = {m1} > M_{r2} = {m2}");
    }
}
