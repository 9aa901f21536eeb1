use fueter_core::monogenic::{builtin_pk, HomogeneousPolynomial, LinearForm, MonogenicPolynomial, PkVariant};
use fueter_core::Multivector;
use proptest::prelude::*;

fn variant(m: usize) -> impl Strategy<Value = PkVariant> {
    (1..=m, 1..=m, prop::bool::ANY)
        .prop_filter("ordered indices", |(i, j, _)| i < j)
        .prop_map(|(i, j, d)| PkVariant {
            i,
            j,
            form: if d { LinearForm::Difference } else { LinearForm::Symmetric },
        })
}

proptest! {
    #[test]
    fn evaluation_is_homogeneous(
        (m, v, x) in prop::sample::select(vec![3usize, 5, 7])
            .prop_flat_map(|m| (Just(m), variant(m), prop::collection::vec(-2.0f64..2.0, m))),
        lambda in -3.0f64..3.0,
    ) {
        let p = builtin_pk(m, 1, v).unwrap();
        let scaled: Vec<f64> = x.iter().map(|t| lambda * t).collect();
        let lhs = p.eval(&scaled).unwrap();
        let rhs = p.eval(&x).unwrap().scale(lambda);
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn evaluation_is_linear_in_the_polynomial(
        x in prop::collection::vec(-2.0f64..2.0, 3),
        s in -2.0f64..2.0,
        t in -2.0f64..2.0,
    ) {
        let p = builtin_pk(3, 1, PkVariant::default()).unwrap();
        let q = builtin_pk(3, 1, PkVariant { i: 1, j: 3, form: LinearForm::Difference }).unwrap();
        let combo = p.polynomial().linear_combination(s, q.polynomial(), t).unwrap();
        let mut expected = p.eval(&x).unwrap().scale(s);
        expected.add_scaled(t, &q.eval(&x).unwrap()).unwrap();
        prop_assert!(combo.eval(&x).unwrap().approx_eq(&expected, 1e-12));
        prop_assert!(combo.dirac().unwrap().is_zero());
    }
}

#[test]
fn non_monogenic_input_is_rejected() {
    let e1 = Multivector::basis_vector(3, 1).unwrap();
    let p = HomogeneousPolynomial::zero(3, 1).unwrap().with_term(&[0, 1, 0], &e1).unwrap();
    assert!(MonogenicPolynomial::new(p).is_err());
}
