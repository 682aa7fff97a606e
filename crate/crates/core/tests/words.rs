use kreeb_core::group::random_expr;
use kreeb_core::word::{normalize, parse_realization, render};
use kreeb_core::GroupExpr;
use proptest::prelude::*;

fn expr_strategy() -> impl Strategy<Value = GroupExpr> {
    let leaf = prop_oneof![Just(GroupExpr::Trivial), Just(GroupExpr::Z)];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GroupExpr::product(a, b)),
            (inner, 1usize..=12).prop_map(|(a, n)| GroupExpr::wreath(a, n)),
        ]
    })
}

/// A normal form never contains `1 ≀ₙ ℤ`, `A ≀₁ ℤ`, a trivial product
/// factor or a left-nested product.
fn is_normal(e: &GroupExpr) -> bool {
    match e {
        GroupExpr::Trivial | GroupExpr::Z => true,
        GroupExpr::Product(a, b) => {
            !matches!(**a, GroupExpr::Trivial | GroupExpr::Product(..))
                && **b != GroupExpr::Trivial
                && is_normal(a)
                && is_normal(b)
        }
        GroupExpr::Wreath(a, n) => n.get() >= 2 && **a != GroupExpr::Trivial && is_normal(a),
    }
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(e in expr_strategy()) {
        prop_assert_eq!(parse_realization(&render(&e)).unwrap(), e);
    }

    #[test]
    fn normalize_preserves_beta1_and_is_idempotent(e in expr_strategy()) {
        let n = normalize(&e);
        prop_assert_eq!(n.beta1(), e.beta1());
        prop_assert_eq!(normalize(&n), n.clone());
        prop_assert!(is_normal(&n), "{}", render(&n));
    }

    #[test]
    fn arbitrary_strings_never_panic(s in "\\PC{0,64}") {
        let _ = parse_realization(&s);
    }

    #[test]
    fn alphabet_soup_parses_or_errors_in_bounds(s in "[1Zxw_r0-9() ≀×ℤ]{0,40}") {
        match parse_realization(&s) {
            Ok(e) => prop_assert_eq!(parse_realization(&render(&e)).unwrap(), e),
            Err(err) => prop_assert!(err.offset <= s.len()),
        }
    }
}

#[test]
fn deep_random_words_round_trip() {
    for seed in 0..300 {
        let e = random_expr(6, 5, seed);
        assert_eq!(parse_realization(&render(&e)).unwrap(), e);
    }
}
