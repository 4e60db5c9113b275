use proptest::prelude::*;
use ybx_core::invariants::InvariantCache;
use ybx_core::model::{ordered_pairs, PairTable, Tag};
use ybx_core::ybe::{enumerate_nonzero_boundaries, yb_polynomial};
use ybx_core::{RWeightSet, Scalar, WeightSet};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=20).prop_map(|(p, d)| Scalar::ratio(p, d).unwrap())
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

fn weights(n: usize) -> impl Strategy<Value = WeightSet> {
    prop::collection::vec(nonzero(), n * (2 * n - 1)).prop_map(move |v| {
        let pairs = n * (n - 1);
        let a = v[..n].to_vec();
        let b = PairTable::from_vec(n, v[n..n + pairs].to_vec()).unwrap();
        let c = PairTable::from_vec(n, v[n + pairs..].to_vec()).unwrap();
        WeightSet::new(n, a, b, c, Tag::S).unwrap()
    })
}

fn r_weights(n: usize) -> impl Strategy<Value = RWeightSet> {
    prop::collection::vec(scalar(), n * (2 * n - 1)).prop_map(move |v| RWeightSet::from_vec(n, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_arithmetic_is_exact(x in scalar(), y in nonzero()) {
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x.clone());
        prop_assert!((&x * &y.inv().unwrap() * &y - &x).is_zero());
    }

    #[test]
    fn display_round_trips(x in scalar()) {
        let text = x.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn tau_is_antisymmetric_multiplicatively(s in weights(3), t in weights(3)) {
        let cache = InvariantCache::new(&s, &t).unwrap();
        for (i, j) in ordered_pairs(3) {
            prop_assert_eq!(cache.tau(i, j) * cache.tau(j, i), Scalar::one());
        }
    }

    #[test]
    fn polynomials_are_linear_in_r(
        s in weights(3), t in weights(3), r1 in r_weights(3), r2 in r_weights(3), lambda in scalar()
    ) {
        let combined = r1.add(&r2.scale(&lambda)).unwrap();
        for b in enumerate_nonzero_boundaries(3).iter().step_by(5) {
            let lhs = yb_polynomial(b, &combined, &s, &t).unwrap();
            let rhs = yb_polynomial(b, &r1, &s, &t).unwrap() + &lambda * &yb_polynomial(b, &r2, &s, &t).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
