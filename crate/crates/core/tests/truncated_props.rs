use proptest::prelude::*;

use setdyn::builtin;
use setdyn::metrics::{rho_bounds, rho_exact};
use setdyn::truncated::{continuations, validate_tuple, LimitSystem};
use setdyn::{q, EventuallyPeriodicSeq, GroundMetric, PLMultiMap, Rational};

fn maps() -> Vec<PLMultiMap> {
    builtin::pl_names().iter().map(|n| builtin::pl_by_name(n).unwrap()).collect()
}

// Follows continuations, picking a sample point of each set by `choices`.
fn walk(sys: &LimitSystem, head: Rational, choices: &[usize]) -> Vec<Rational> {
    let mut t = vec![head];
    for &c in choices {
        let Ok(next) = continuations(sys, &t) else { break };
        let options = next.sample();
        t.push(options[c % options.len()].clone());
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn walks_validate_with_their_prefixes(
        idx in 0usize..5,
        head in 0i64..=64,
        choices in prop::collection::vec(0usize..8, 0..6),
        inverse in any::<bool>(),
    ) {
        let f = maps()[idx].clone();
        let sys = if inverse { LimitSystem::inverse(f) } else { LimitSystem::forward(f) };
        let t = walk(&sys, q(head, 64), &choices);
        prop_assert!(validate_tuple(&sys, &t).unwrap().is_true());
        for k in 1..t.len() {
            prop_assert!(validate_tuple(&sys, &t[..k]).unwrap().is_true());
        }
    }

    #[test]
    fn accepted_tuples_are_prefix_closed(idx in 0usize..5, coords in prop::collection::vec(0i64..=4, 1..6)) {
        let sys = LimitSystem::forward(maps()[idx].clone());
        let t: Vec<Rational> = coords.iter().map(|&c| q(c, 4)).collect();
        if validate_tuple(&sys, &t).unwrap().is_true() {
            for k in 1..t.len() {
                prop_assert!(validate_tuple(&sys, &t[..k]).unwrap().is_true());
            }
        }
    }

    #[test]
    fn continuations_invert_the_map(idx in 0usize..5, head in 0i64..=64, choices in prop::collection::vec(0usize..8, 0..4)) {
        let f = maps()[idx].clone();
        let Ok(inv) = f.invert() else { return Ok(()) };
        let sys = LimitSystem::forward(f);
        let t = walk(&sys, q(head, 64), &choices);
        prop_assert_eq!(continuations(&sys, &t).unwrap(), inv.evaluate(t.last().unwrap()).unwrap());
    }

    #[test]
    fn bounds_bracket_constant_tails(
        x in prop::collection::vec(0i64..=16, 1..6),
        y in prop::collection::vec(0i64..=16, 1..6),
        k in 1usize..=12,
    ) {
        let to_seq = |v: &[i64]| {
            let coords: Vec<Rational> = v.iter().map(|&c| q(c, 16)).collect();
            let tail = coords.last().unwrap().clone();
            EventuallyPeriodicSeq::new(coords, vec![tail]).unwrap()
        };
        let (a, b) = (to_seq(&x), to_seq(&y));
        let m = GroundMetric::UnitInterval;
        let d = rho_exact(&a, &b, &m).unwrap();
        let (lo, hi) = rho_bounds(&a.prefix(k), &b.prefix(k), &m).unwrap();
        prop_assert!(lo <= d && d <= hi);
    }
}
