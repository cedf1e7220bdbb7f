//! Randomized algebraic properties of the exact arithmetic.

use std::collections::BTreeMap;

use ffice::exactalg::{from_json, parse_human, to_human, to_json, Point, RatFun, Var};
use num_rational::BigRational;
use proptest::prelude::*;

/// Small Laurent polynomials in u, w1, w2.
fn laurent() -> impl Strategy<Value = RatFun> {
    let term = (-4i64..=4, -2i32..=2, -2i32..=2, -2i32..=2);
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, a, b, d)| {
                RatFun::from_int(c)
                    * RatFun::u().pow(a).unwrap()
                    * RatFun::w(1).pow(b).unwrap()
                    * RatFun::w(2).pow(d).unwrap()
            })
            .sum()
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| n.div(&d).ok())
}

fn point() -> impl Strategy<Value = Point> {
    let nonzero = (1i64..=9, any::<bool>(), 1i64..=4)
        .prop_map(|(n, neg, d)| BigRational::new((if neg { -n } else { n }).into(), d.into()));
    (nonzero.clone(), nonzero.clone(), nonzero).prop_map(|(a, b, c)| {
        let mut p = BTreeMap::new();
        p.insert(Var::U, a);
        p.insert(Var::w(1), b);
        p.insert(Var::w(2), c);
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverses(a in ratfun()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfun(), b in ratfun(), p in point()) {
        if let (Ok(x), Ok(y)) = (a.evaluate_at(&p), b.evaluate_at(&p)) {
            prop_assert_eq!((&a + &b).evaluate_at(&p).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).evaluate_at(&p).unwrap(), &x * &y);
        }
    }

    #[test]
    fn serialization_round_trips(a in ratfun()) {
        prop_assert_eq!(from_json(&to_json(&a)).unwrap(), a.clone());
        prop_assert_eq!(parse_human(&to_human(&a)).unwrap(), a.clone());
        prop_assert_eq!(parse_human(&a.to_string()).unwrap(), a);
    }
}
