use fueter_core::forward::{fueter_map, FueterConfig};
use fueter_core::jet::HolomorphicExpr;
use fueter_core::monogenic::{builtin_pk, PkVariant};
use fueter_core::verify::{monogenicity_residual, GridSpec};
use fueter_core::{Paravector, Rectangle};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = (usize, u32)> {
    prop::sample::select(vec![(3usize, 0u32), (3, 1), (5, 0), (5, 1), (7, 0)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forward_map_is_real_linear(
        (m, k) in config(),
        s in -2.0f64..2.0,
        t in -2.0f64..2.0,
        x0 in -1.0f64..1.0,
        r in 0.3f64..1.5,
    ) {
        let cfg = FueterConfig::new(m, k).unwrap();
        let pk = builtin_pk(m, k, PkVariant::default()).unwrap();
        let f = HolomorphicExpr::recip();
        let g = HolomorphicExpr::arctan();
        let combo = f.clone().scaled(s).plus(g.clone().scaled(t));
        let mut dir = vec![0.0; m];
        dir[0] = 0.6;
        dir[m - 1] = 0.8;
        let p = Paravector::from_axial(x0, r, &dir).unwrap();
        let lhs = fueter_map(&combo, &pk, &cfg, &p).unwrap();
        let mut rhs = fueter_map(&f, &pk, &cfg, &p).unwrap().scale(s);
        rhs.add_scaled(t, &fueter_map(&g, &pk, &cfg, &p).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-9 * (1.0 + rhs.max_abs())));
    }
}

#[test]
fn images_are_monogenic() {
    let grid = GridSpec::new(Rectangle::new(0.3, 1.2, 0.4, 1.3).unwrap(), 4, 4, 1e-3).unwrap();
    let mut cases = Vec::new();
    for (k, m) in [(0u32, 3usize), (1, 3), (0, 5)] {
        for h in [HolomorphicExpr::power(2), HolomorphicExpr::recip(), HolomorphicExpr::arctan()] {
            cases.push((m, k, h));
        }
    }
    for (m, k, h) in cases {
        let cfg = FueterConfig::new(m, k).unwrap();
        let pk = builtin_pk(m, k, PkVariant::default()).unwrap();
        let mut dir = vec![0.3; m];
        dir[1] = -0.5;
        let rep = monogenicity_residual(&|p| fueter_map(&h, &pk, &cfg, p), &dir, &grid).unwrap();
        assert!(rep.max < 1e-5, "m={m} k={k} {h:?}: {}", rep.max);
    }
}

#[test]
fn even_dimensions_are_rejected() {
    assert!(FueterConfig::new(4, 0).is_err());
    assert!(FueterConfig::new(11, 0).is_err());
}
