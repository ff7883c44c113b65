use cfk::fixtures::{build, fixtures, oracle_disagreements, property_violations, random_products, SEED};
use cfk::invariants::{hfk_hat, nu_plus, tau, v};
use cfk::{BifilteredComplex, KnotExpr};
use proptest::prelude::*;

#[test]
fn fixtures_satisfy_properties() {
    for e in fixtures() {
        let c = build(&e);
        assert!(c.validate().is_ok(), "{e}");
        assert_eq!(property_violations(&c, -6..=6).unwrap(), Vec::<String>::new(), "{e}");
    }
}

#[test]
fn oracle_agrees_on_fixtures() {
    for e in fixtures() {
        assert_eq!(oracle_disagreements(&build(&e), -6..=6).unwrap(), Vec::<i64>::new(), "{e}");
    }
}

#[test]
fn oracle_agrees_on_random_products() {
    for e in random_products(SEED, 20) {
        let c = build(&e);
        assert_eq!(oracle_disagreements(&c, -6..=6).unwrap(), Vec::<i64>::new(), "{e}");
    }
}

fn staircase_factor() -> impl Strategy<Value = KnotExpr> {
    prop_oneof![
        Just(KnotExpr::torus(2, 3)),
        Just(KnotExpr::torus(2, 5)),
        Just(KnotExpr::torus(3, 4)),
        Just(KnotExpr::cable(2, 5, KnotExpr::torus(2, 3))),
    ]
    .prop_flat_map(|e| prop_oneof![Just(e.clone()), Just(KnotExpr::mirror(e))])
}

fn product() -> impl Strategy<Value = (KnotExpr, BifilteredComplex)> {
    product_of(1..=3)
}

fn product_of(factors: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (KnotExpr, BifilteredComplex)> {
    proptest::collection::vec(staircase_factor(), factors).prop_map(|fs| {
        let e = fs.into_iter().reduce(KnotExpr::sum).unwrap();
        let c = build(&e);
        (e, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_satisfy_properties((e, c) in product()) {
        prop_assert!(c.validate().is_ok(), "{}", e);
        prop_assert_eq!(property_violations(&c, -5..=5).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn mirror_negates_tau_and_hfk((_e, c) in product()) {
        let d = c.dual();
        prop_assert_eq!(tau(&d).unwrap(), -tau(&c).unwrap());
        let flipped: std::collections::BTreeMap<_, _> = hfk_hat(&c).into_iter().map(|((a, m), r)| ((-a, -m), r)).collect();
        prop_assert_eq!(hfk_hat(&d), flipped);
    }

    #[test]
    fn tau_is_additive((_a, x) in product_of(1..=2), (_b, y) in product_of(1..=2)) {
        let s = x.tensor(&y);
        prop_assert_eq!(tau(&s).unwrap(), tau(&x).unwrap() + tau(&y).unwrap());
        // V is subadditive: V_{j+k}(X#Y) <= V_j(X) + V_k(Y)
        prop_assert!(v(&s, 0).unwrap() <= v(&x, 0).unwrap() + v(&y, 0).unwrap());
        prop_assert!(nu_plus(&s).unwrap() <= nu_plus(&x).unwrap() + nu_plus(&y).unwrap());
    }

    #[test]
    fn cancellation_preserves_v((_e, c) in product(), k in -4i64..=4) {
        let r = c.cancel_filtered_pairs();
        prop_assert!(r.validate().is_ok());
        prop_assert_eq!(v(&r, k).unwrap(), v(&c, k).unwrap());
        prop_assert_eq!(hfk_hat(&r), hfk_hat(&c));
    }

    #[test]
    fn knot_and_mirror_sum_is_slice_like((_e, c) in product_of(1..=2)) {
        let s = c.tensor(&c.dual());
        prop_assert_eq!(tau(&s).unwrap(), 0);
        prop_assert_eq!(nu_plus(&s).unwrap(), 0);
        prop_assert_eq!(v(&s, 0).unwrap(), 0);
    }
}
