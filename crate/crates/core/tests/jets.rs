use fueter_core::jet::{radial_derivatives, Holomorphic, HolomorphicExpr, Jet};
use num_complex::Complex64;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Complex64> {
    (0.2f64..2.0, 0.2f64..2.0).prop_map(|(x, y)| Complex64::new(x, y))
}

fn jet_at(z: Complex64, seed: [f64; 6]) -> Jet {
    let derivs: Vec<Complex64> = seed.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
    Jet::from_derivatives(z, &derivs).unwrap()
}

proptest! {
    #[test]
    fn multiplication_commutes(z in point(), a in prop::array::uniform6(-2.0f64..2.0), b in prop::array::uniform6(-2.0f64..2.0)) {
        let (ja, jb) = (jet_at(z, a), jet_at(z, b));
        let (p, q) = (ja.mul(&jb).unwrap(), jb.mul(&ja).unwrap());
        for j in 0..3 {
            prop_assert!((p.derivative(j) - q.derivative(j)).norm() < 1e-12);
        }
    }

    #[test]
    fn division_undoes_multiplication(z in point(), a in prop::array::uniform6(-2.0f64..2.0), b in prop::array::uniform6(-2.0f64..2.0)) {
        prop_assume!(Complex64::new(b[0], b[1]).norm() > 0.3);
        let (ja, jb) = (jet_at(z, a), jet_at(z, b));
        let back = ja.mul(&jb).unwrap().div(&jb).unwrap();
        for j in 0..3 {
            prop_assert!((back.derivative(j) - ja.derivative(j)).norm() < 1e-10);
        }
    }

    #[test]
    fn recip_matches_power_minus_one(z in point()) {
        let a = Jet::recip(z, 6).unwrap();
        let b = Jet::power(z, -1, 6).unwrap();
        for j in 0..=6 {
            prop_assert!((a.derivative(j) - b.derivative(j)).norm() <= 1e-12 * (1.0 + a.derivative(j).norm()));
        }
    }

    #[test]
    fn arctan_derivative_is_rational(z in point()) {
        let j = Jet::arctan(z, 4).unwrap();
        let expected = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) + z * z);
        prop_assert!((j.derivative(1) - expected).norm() < 1e-12);
    }

    #[test]
    fn radial_derivatives_match_finite_differences(x0 in 0.3f64..1.5, r in 0.3f64..1.5) {
        let h = HolomorphicExpr::z_arctan();
        let (u, v) = radial_derivatives(&h, x0, r, 1).unwrap();
        let step = 1e-5;
        let f = |s: f64| h.eval(Complex64::new(x0, s)).unwrap();
        let d = (f(r + step) - f(r - step)) / (2.0 * step);
        prop_assert!((u[1] - d.re).abs() < 1e-8);
        prop_assert!((v[1] - d.im).abs() < 1e-8);
        prop_assert!((u[0] - f(r).re).abs() < 1e-15);
    }
}
