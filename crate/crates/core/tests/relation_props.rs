use proptest::prelude::*;

use setdyn::relation::oracle::{sensitivity_oracle, strong_sensitivity_oracle, transitivity_oracle};
use setdyn::harness::exhaustive_systems;
use setdyn::{q, Certificate, RelationSystem, StateSet};

fn system(max_states: usize) -> impl Strategy<Value = RelationSystem> {
    (1..=max_states).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), n).prop_map(move |bits| {
            let labels = (0..n).map(|i| format!("s{i}")).collect();
            RelationSystem::new(labels, bits.into_iter().map(StateSet::from_bits).collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn double_inversion(f in system(5)) {
        if let Ok(g) = f.invert() {
            prop_assert_eq!(g.invert().unwrap(), f);
        }
    }

    #[test]
    fn transposition_keeps_periodic_points(f in system(5)) {
        if let Ok(g) = f.invert() {
            prop_assert_eq!(f.periodic_points().states, g.periodic_points().states);
        }
    }

    #[test]
    fn iterate_is_image_of_previous(f in system(5)) {
        for x in 0..f.len() {
            for k in 0..(1u64 << f.len()) {
                let prev = f.iterate(x, k).unwrap();
                prop_assert_eq!(f.iterate(x, k + 1).unwrap(), f.image(prev).unwrap());
            }
        }
    }

    #[test]
    fn transitive_systems_are_periodic(f in system(6)) {
        if f.is_transitive().is_true() {
            prop_assert_eq!(f.periodic_points().states, f.states());
        }
    }

    #[test]
    fn ray_certificate_replays(f in system(6)) {
        if let Certificate::DeterministicRay { start, ray } = f.is_sensitive().certificate {
            prop_assert_eq!(*ray.get(0), start);
            for i in 0..ray.preperiod().len() + 2 * ray.cycle().len() {
                prop_assert_eq!(f.fiber(*ray.get(i)), StateSet::singleton(*ray.get(i + 1)));
            }
        }
    }

    #[test]
    fn every_verdict_is_decided(f in system(6)) {
        for v in [f.is_transitive(), f.periodic_dense(), f.is_sensitive(), f.is_strongly_sensitive(), f.is_surjective()] {
            prop_assert!(v.value.is_decided());
        }
    }
}

#[test]
fn graph_criteria_match_oracles_up_to_three_states() {
    let mut count = 0;
    for n in 1..=3 {
        for f in exhaustive_systems(n).unwrap() {
            let horizon = 1 << n;
            assert_eq!(f.is_strongly_sensitive().value, strong_sensitivity_oracle(&f, &q(1, 2), horizon).unwrap().value);
            assert_eq!(f.is_sensitive().value, sensitivity_oracle(&f, horizon + n).value);
            assert_eq!(f.is_transitive().value, transitivity_oracle(&f, n).value);
            count += 1;
        }
    }
    assert_eq!(count, 1 + 9 + 343);
}
