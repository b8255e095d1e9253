use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

use setdyn::metrics::{hausdorff_intervals, rho_bounds, rho_exact};
use setdyn::{q, EventuallyPeriodicSeq, GroundMetric, Interval, IntervalUnion, Rational};

fn seq(states: usize) -> impl Strategy<Value = EventuallyPeriodicSeq<usize>> {
    (prop::collection::vec(0..states, 0..5), prop::collection::vec(0..states, 1..5))
        .prop_map(|(p, c)| EventuallyPeriodicSeq::new(p, c).unwrap())
}

fn dyadic() -> impl Strategy<Value = Rational> {
    (0i64..=64).prop_map(|k| q(k, 64))
}

fn real_seq() -> impl Strategy<Value = EventuallyPeriodicSeq<Rational>> {
    (prop::collection::vec(dyadic(), 0..4), dyadic()).prop_map(|(p, c)| EventuallyPeriodicSeq::new(p, vec![c]).unwrap())
}

fn union() -> impl Strategy<Value = IntervalUnion> {
    prop::collection::vec((dyadic(), dyadic()), 1..4).prop_map(|parts| {
        IntervalUnion::from_parts(parts.into_iter().map(|(a, b)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            Interval::closed(lo, hi).unwrap()
        }))
    })
}

const D3: GroundMetric = GroundMetric::Discrete { states: 3 };

proptest! {
    #[test]
    fn rationals_in_lowest_terms(n in -1000i64..1000, d in 1i64..1000) {
        let r = q(n, d);
        prop_assert!(r.denom().is_positive());
        prop_assert!(r.numer().gcd(r.denom()) == num_bigint::BigInt::from(1));
    }

    #[test]
    fn canonical_sequences_are_structural(
        p in prop::collection::vec(0usize..3, 0..4),
        c in prop::collection::vec(0usize..3, 1..4),
        reps in 1usize..4,
    ) {
        let base = EventuallyPeriodicSeq::new(p.clone(), c.clone()).unwrap();
        let longer = EventuallyPeriodicSeq::new(p.clone(), c.repeat(reps)).unwrap();
        let mut unrolled = p.clone();
        unrolled.extend_from_slice(&c);
        let shifted = EventuallyPeriodicSeq::new(unrolled, c.clone()).unwrap();
        prop_assert_eq!(&base, &longer);
        prop_assert_eq!(&base, &shifted);
        for i in 0..12 {
            let want = if i < p.len() { p[i] } else { c[(i - p.len()) % c.len()] };
            prop_assert_eq!(*base.get(i), want);
        }
    }

    #[test]
    fn rho_is_a_metric(x in seq(3), y in seq(3), z in seq(3)) {
        let rho = |a: &EventuallyPeriodicSeq<usize>, b: &EventuallyPeriodicSeq<usize>| rho_exact(a, b, &D3).unwrap();
        let d = rho(&x, &y);
        prop_assert!(!d.is_negative() && d <= Rational::from_int(2));
        prop_assert_eq!(&d, &rho(&y, &x));
        prop_assert_eq!(d.is_zero(), x == y);
        prop_assert!(rho(&x, &z) <= &d + &rho(&y, &z));
    }

    #[test]
    fn rho_bounds_bracket(x in seq(3), y in seq(3), k in 1usize..=16) {
        let d = rho_exact(&x, &y, &D3).unwrap();
        let (lo, hi) = rho_bounds(&x.prefix(k), &y.prefix(k), &D3).unwrap();
        prop_assert!(lo <= d && d <= hi);
        prop_assert!(&hi - &lo <= Rational::pow2(1 - k as i32));
    }

    #[test]
    fn rho_bounds_bracket_real_tails(x in real_seq(), y in real_seq(), k in 1usize..=16) {
        let m = GroundMetric::UnitInterval;
        let d = rho_exact(&x, &y, &m).unwrap();
        let (lo, hi) = rho_bounds(&x.prefix(k), &y.prefix(k), &m).unwrap();
        prop_assert!(lo <= d && d <= hi);
    }

    #[test]
    fn rho_to_own_shift_is_finite(x in seq(3)) {
        let d = rho_exact(&x, &x.shift_by(1), &D3).unwrap();
        prop_assert!(d <= Rational::from_int(2));
    }

    #[test]
    fn hausdorff_is_a_metric(a in union(), b in union(), c in union()) {
        let h = |u: &IntervalUnion, v: &IntervalUnion| hausdorff_intervals(u, v).unwrap();
        let d = h(&a, &b);
        prop_assert!(!d.is_negative());
        prop_assert_eq!(&d, &h(&b, &a));
        prop_assert_eq!(d.is_zero(), a == b);
        prop_assert!(h(&a, &c) <= &d + &h(&b, &c));
    }

    #[test]
    fn unions_are_canonical(u in union(), v in union()) {
        for w in [u.union(&v), u.intersection(&v), u.complement_in_unit()] {
            for pair in w.components().windows(2) {
                let touching = pair[0].hi() == pair[1].lo() && (pair[0].hi_closed() || pair[1].lo_closed());
                prop_assert!(pair[0].hi() <= pair[1].lo() && !touching);
            }
        }
    }
}

#[test]
fn diameters_are_one() {
    assert_eq!(D3.diameter(), Rational::one());
    assert_eq!(GroundMetric::UnitInterval.diameter(), Rational::one());
}
