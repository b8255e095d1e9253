use proptest::prelude::*;

use setdyn::builtin;
use setdyn::pl::analysis::{diagonal, full_fiber_points, pl_periodic_points_bounded, verify_strong_sensitivity};
use setdyn::pl::ratio::ratio_orbit_separation;
use setdyn::{q, Certificate, Interval, IntervalUnion, PLMultiMap, Rational};

fn maps() -> Vec<PLMultiMap> {
    builtin::pl_names().iter().map(|n| builtin::pl_by_name(n).unwrap()).collect()
}

fn map() -> impl Strategy<Value = PLMultiMap> {
    prop::sample::select(maps())
}

fn point() -> impl Strategy<Value = Rational> {
    (0i64..=997).prop_map(|k| q(k, 997))
}

fn union() -> impl Strategy<Value = IntervalUnion> {
    prop::collection::vec((0i64..=32, 0i64..=32), 1..3).prop_map(|parts| {
        IntervalUnion::from_parts(parts.into_iter().map(|(a, b)| {
            Interval::closed(q(a.min(b), 32), q(a.max(b), 32)).unwrap()
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fibers_are_nonempty_and_closed(f in map(), x in point()) {
        let fx = f.evaluate(&x).unwrap();
        prop_assert!(!fx.is_empty());
        prop_assert_eq!(fx.closure(), fx);
    }

    #[test]
    fn images_respect_unions(f in map(), u in union(), v in union()) {
        let both = f.image_of(&u.union(&v));
        prop_assert_eq!(&both, &f.image_of(&u).union(&f.image_of(&v)));
        prop_assert!(f.image_of(&u).is_subset(&both));
    }

    #[test]
    fn preimage_of_image_covers(f in map(), u in union()) {
        if let Ok(inv) = f.invert() {
            prop_assert!(u.is_subset(&inv.image_of(&f.image_of(&u))));
        }
    }

    #[test]
    fn identity_is_neutral(f in map()) {
        let id = PLMultiMap::identity();
        prop_assert_eq!(&PLMultiMap::compose(&f, &id), &f);
        prop_assert_eq!(&PLMultiMap::compose(&id, &f), &f);
    }

    #[test]
    fn composition_matches_fibers(f in map(), g in map(), x in point()) {
        let fg = PLMultiMap::compose(&f, &g);
        prop_assert_eq!(fg.evaluate(&x).unwrap(), f.image_of(&g.evaluate(&x).unwrap()));
    }

    #[test]
    fn separation_grows_geometrically(x0 in 0i64..1000, e in 1i64..1000, l in 1usize..=20) {
        let (x0, eps) = (q(x0, 1000), q(e, 1000));
        let sep = ratio_orbit_separation(&x0, &eps, l).unwrap();
        prop_assert!(sep >= eps * Rational::pow2(l as i32));
    }
}

#[test]
fn fixed_points_are_the_diagonal() {
    for f in maps() {
        assert_eq!(pl_periodic_points_bounded(&f, 1).unwrap().all, diagonal(&f));
    }
}

#[test]
fn full_fibers_rule_out_strong_sensitivity() {
    let eps = vec![q(1, 8), q(1, 16)];
    for f in maps().into_iter().flat_map(|f| [f.invert().ok(), Some(f)]).flatten() {
        if !full_fiber_points(&f).is_empty() {
            let v = verify_strong_sensitivity(&f, &q(1, 8), 8, &eps, 8).unwrap();
            assert!(v.is_false());
            assert!(matches!(v.certificate, Certificate::FullFiberAt { .. }));
        }
    }
}
