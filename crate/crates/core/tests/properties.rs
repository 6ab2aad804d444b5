mod common;

use mdpv::ansatz::{Derivation, LaurentPoly};
use mdpv::expr::{Number, Polynomial};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn derivative_matches_finite_differences((e, x, y) in common::arb_case()) {
        common::check_derivative(&e, x, y)?;
    }

    #[test]
    fn format_then_parse_preserves_value((e, x, y) in common::arb_case()) {
        common::check_roundtrip(&e, x, y)?;
    }

    #[test]
    fn riccati_derivation_obeys_leibniz(
        p in prop::collection::vec((-3i32..=3, -4i64..=4), 1..5),
        q in prop::collection::vec((-3i32..=3, -4i64..=4), 1..5),
        (a, b, g) in (-3i64..=3, -3i64..=3, -3i64..=3),
    ) {
        let lp = |terms: &[(i32, i64)]| terms.iter().fold(LaurentPoly::zero(), |acc, (k, c)| acc.add(&LaurentPoly::monomial(*k, Number::int(*c))));
        let (p, q) = (lp(&p), lp(&q));
        let c = |v: i64| Polynomial::constant(Number::int(v));
        let d = Derivation::riccati(c(a), c(b), c(g));
        let lhs = d.apply(&p.mul(&q));
        let rhs = d.apply(&p).mul(&q).add(&p.mul(&d.apply(&q)));
        prop_assert_eq!(lhs, rhs);
    }
}
