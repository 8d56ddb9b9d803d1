use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use quadlab::{FormClass, QuadForm, UnimodularTransform};

fn coeff() -> impl Strategy<Value = i64> {
    -60i64..=60
}

fn nonsquare_form() -> impl Strategy<Value = QuadForm> {
    (coeff(), coeff(), coeff())
        .prop_map(|(a, b, c)| QuadForm::new(a, b, c))
        .prop_filter("square discriminant", |q| {
            !matches!(q.classify(), FormClass::SquareDiscriminant { .. })
        })
}

/// Products of the generators S and T^s, so the determinant is one by
/// construction.
fn sl2z() -> impl Strategy<Value = UnimodularTransform> {
    prop::collection::vec(-4i64..=4, 0..6).prop_map(|steps| {
        steps.into_iter().fold(UnimodularTransform::identity(), |acc, s| {
            &(&acc * &UnimodularTransform::translation(BigInt::from(s))) * &UnimodularTransform::s()
        })
    })
}

proptest! {
    #[test]
    fn reduction_is_witnessed(q in nonsquare_form()) {
        let (r, t) = q.reduce().unwrap();
        prop_assert_eq!(t.det(), 1);
        prop_assert_eq!(q.apply_transform(&t), r.clone());
        prop_assert_eq!(r.discriminant(), q.discriminant());
        prop_assert!(r.is_reduced());
    }

    #[test]
    fn transformed_forms_stay_equivalent(q in nonsquare_form(), m in sl2z()) {
        let p = q.apply_transform(&m);
        prop_assert_eq!(p.discriminant(), q.discriminant());
        let w = q.equivalent(&p).unwrap().expect("images under SL2(Z) are equivalent");
        prop_assert_eq!(w.det(), 1);
        prop_assert_eq!(q.apply_transform(&w), p.clone());
        let back = p.equivalent(&q).unwrap().expect("equivalence is symmetric");
        prop_assert_eq!(p.apply_transform(&back), q);
    }

    #[test]
    fn definite_reduction_is_canonical(q in nonsquare_form(), m in sl2z()) {
        prop_assume!(q.classify().is_definite());
        let p = q.apply_transform(&m);
        prop_assert_eq!(q.reduce().unwrap().0, p.reduce().unwrap().0);
    }

    #[test]
    fn cycle_members_are_reduced(q in nonsquare_form()) {
        prop_assume!(q.classify() == FormClass::IndefiniteNonsquare);
        let cycle = q.cycle().unwrap();
        prop_assert!(!cycle.is_empty());
        for e in &cycle {
            prop_assert!(e.form.is_reduced());
            prop_assert_eq!(q.apply_transform(&e.witness), e.form.clone());
        }
    }

    #[test]
    fn eval_is_transform_invariant(q in nonsquare_form(), m in sl2z(), x in -50i64..50, y in -50i64..50) {
        let p = q.apply_transform(&m);
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let (u, v) = m.apply_to_vector(&x, &y);
        prop_assert_eq!(p.eval(&x, &y), q.eval(&u, &v));
    }
}

#[test]
fn classification_examples() {
    assert_eq!(QuadForm::new(1, 0, 1).classify(), FormClass::PositiveDefinite);
    assert_eq!(QuadForm::new(-1, 0, -3).classify(), FormClass::NegativeDefinite);
    assert_eq!(QuadForm::new(1, 0, -2).classify(), FormClass::IndefiniteNonsquare);
    assert!(matches!(QuadForm::new(1, 3, 2).classify(), FormClass::SquareDiscriminant { .. }));
    assert!(QuadForm::new(1, 3, 2).reduce().is_err());
    let neg = QuadForm::new(-5, -14, -10).reduce().unwrap().0;
    assert_eq!(neg, QuadForm::new(-1, 0, -1));
    assert!(neg.c.is_negative());
}
