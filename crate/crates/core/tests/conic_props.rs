use deriv_closure::conic::{dense_point, membership, ConicSet};
use deriv_closure::exactnum::{int, rat, BigRational};
use num::traits::{One, Signed};
use proptest::prelude::*;

fn set() -> impl Strategy<Value = ConicSet> {
    prop_oneof![Just(ConicSet::U), Just(ConicSet::V), Just(ConicSet::W)]
}

fn target(set: ConicSet) -> BoxedStrategy<BigRational> {
    match set {
        ConicSet::W => (-99i64..=99).prop_map(|k| rat(k, 100)).boxed(),
        ConicSet::V => (101i64..=900, any::<bool>())
            .prop_map(|(k, neg)| if neg { rat(-k, 100) } else { rat(k, 100) })
            .boxed(),
        ConicSet::U => (-900i64..=900).prop_map(|k| rat(k, 100)).boxed(),
    }
}

proptest! {
    #[test]
    fn certificates_are_exact(
        (set, x) in set().prop_flat_map(|s| (Just(s), target(s))),
        e in 1i64..=200,
    ) {
        let eps = rat(e, 1000);
        let cert = dense_point(set, &x, &eps).unwrap();
        prop_assert!((&cert.s - &x).abs() < eps);
        prop_assert!(membership(set, &cert.s));
        prop_assert!(cert.companion.is_positive());
        prop_assert_eq!(&cert.companion * &cert.companion, set.radicand(&cert.s));
        prop_assert!(cert.verify());
    }

    #[test]
    fn parametrizations_land_in_their_sets(n in -500i64..=500, d in 1i64..=500, set in set()) {
        let r = rat(n, d);
        prop_assume!(r.abs() != BigRational::one());
        if let Some(s) = set.param(&r) {
            prop_assert!(membership(set, &s) || (set == ConicSet::V && s.abs() <= BigRational::one()) || (set == ConicSet::W && s.abs() >= BigRational::one()));
            prop_assert!(set.companion(&r).is_some());
        }
    }
}

#[test]
fn w_density_sweep() {
    for k in -99..=99 {
        let x = rat(k, 100);
        let cert = dense_point(ConicSet::W, &x, &rat(1, 1000)).unwrap();
        assert!(cert.verify(), "target {x}");
    }
}

#[test]
fn documented_examples() {
    assert!(membership(ConicSet::U, &rat(3, 4)));
    assert!(!membership(ConicSet::W, &rat(1, 2)));
    assert!(membership(ConicSet::V, &rat(5, 3)));
    let u0 = dense_point(ConicSet::U, &int(0), &rat(1, 10)).unwrap();
    assert_eq!((u0.r, u0.s, u0.companion), (int(0), int(0), int(1)));
    let w = dense_point(ConicSet::W, &rat(3, 5), &rat(1, 5)).unwrap();
    assert!(rat(2, 5) < w.s && w.s < rat(4, 5));
    let v = dense_point(ConicSet::V, &rat(3, 2), &rat(1, 4)).unwrap();
    assert!(rat(5, 4) < v.s && v.s < rat(7, 4));
}
