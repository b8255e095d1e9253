//! Brute-force counterparts of the graph criteria in [`super`].
//!
//! These enumerate orbits explicitly and share no code with the graph
//! algorithms beyond fiber lookup.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::metrics::ground_distance;
use crate::rational::Rational;
use crate::verdict::{Certificate, Truth, Verdict};

use super::{RelationSystem, StateSet};

/// Visit every orbit word with exactly `steps` transitions starting at
/// `start`, in lexicographic order. The visitor may stop early.
pub fn for_each_orbit_word<Fv>(f: &RelationSystem, start: usize, steps: usize, mut visit: Fv) -> ControlFlow<()>
where
    Fv: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut word = vec![start];
    walk(f, steps, &mut word, &mut visit)
}

fn walk<Fv>(f: &RelationSystem, steps: usize, word: &mut Vec<usize>, visit: &mut Fv) -> ControlFlow<()>
where
    Fv: FnMut(&[usize]) -> ControlFlow<()>,
{
    if word.len() == steps + 1 {
        return visit(word);
    }
    let last = *word.last().expect("nonempty");
    for s in f.fiber(last).iter() {
        word.push(s);
        let flow = walk(f, steps, word, visit);
        word.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Endpoint sets of all orbit words of length `0..=horizon` from `x`.
fn reach_layers(f: &RelationSystem, x: usize, horizon: usize) -> Vec<StateSet> {
    // Layer n is the set of last entries of length-n orbit words; built by
    // extending each word one branch at a time.
    let mut layers = vec![StateSet::singleton(x)];
    for _ in 0..horizon {
        let prev = *layers.last().expect("nonempty");
        let mut next = StateSet::EMPTY;
        for s in prev.iter() {
            for t in f.fiber(s).iter() {
                next.insert(t);
            }
        }
        layers.push(next);
    }
    layers
}

/// Tests the strong-sensitivity quantifiers by exhaustive search over
/// states, realized radii, ball members and orbits up to `horizon`.
pub fn strong_sensitivity_oracle(f: &RelationSystem, delta: &Rational, horizon: usize) -> Result<Verdict> {
    if horizon < 1 {
        return Err(Error::argument("horizon must be at least 1"));
    }
    let n = f.len();
    let metric = f.metric();
    let mut distances = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            distances.insert(ground_distance(&metric, &a, &b)?);
        }
    }
    // Every ball B(x, eps) equals B(x, r) for r a positive realized distance
    // or r just above the largest one.
    let mut radii: Vec<Rational> = distances.iter().filter(|d| d.is_positive()).cloned().collect();
    radii.push(distances.iter().next_back().expect("nonempty") + Rational::one());
    let mut rows = Vec::new();
    for x in 0..n {
        let x_layers = reach_layers(f, x, horizon);
        for eps in &radii {
            let mut ball = Vec::new();
            for y in 0..n {
                if &ground_distance(&metric, &x, &y)? < eps {
                    ball.push(y);
                }
            }
            let mut found = None;
            'search: for &y in &ball {
                let y_layers = reach_layers(f, y, horizon);
                for step in 1..=horizon {
                    for yn in y_layers[step].iter() {
                        let mut closest: Option<Rational> = None;
                        for xn in x_layers[step].iter() {
                            let d = ground_distance(&metric, &xn, &yn)?;
                            closest = Some(match closest {
                                Some(c) if c <= d => c,
                                _ => d,
                            });
                        }
                        if closest.is_some_and(|c| &c > delta) {
                            found = Some((y, step, yn));
                            break 'search;
                        }
                    }
                }
            }
            match found {
                Some((y, step, _)) => rows.push((x, eps.clone(), y, step)),
                None => {
                    let bound_reached = (horizon as u128) >= 1u128 << n.min(100);
                    return Ok(if bound_reached {
                        Verdict::no(Certificate::NoSeparation {
                            state: x,
                            epsilon: eps.clone(),
                            horizon,
                        })
                    } else {
                        Verdict::undecided(horizon as u64, format!("no separation around state {x} below the powerset bound"))
                    });
                }
            }
        }
    }
    Ok(Verdict::yes(Certificate::StateSeparations { rows }))
}

/// The first two orbit words from `x` with `depth` transitions, if they exist.
pub fn orbit_pair(f: &RelationSystem, x: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(2);
    let _ = for_each_orbit_word(f, x, depth, |w| {
        out.push(w.to_vec());
        if out.len() == 2 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// Sensitivity by orbit-pair enumeration: every state must have two
/// distinct orbit words of `depth` transitions.
pub fn sensitivity_oracle(f: &RelationSystem, depth: usize) -> Verdict {
    for x in 0..f.len() {
        let mut words = orbit_pair(f, x, depth);
        if words.len() < 2 {
            if depth < f.len() {
                return Verdict::undecided(depth as u64, format!("state {x} has a unique orbit prefix"));
            }
            return Verdict::no(Certificate::UniqueOrbit {
                state: x,
                prefix: words.pop().expect("fibers are nonempty"),
            });
        }
    }
    Verdict::yes(Certificate::Exhaustive { checked: f.len() })
}

/// Transitivity by explicit path enumeration up to `max_len` transitions.
pub fn transitivity_oracle(f: &RelationSystem, max_len: usize) -> Verdict {
    let n = f.len();
    for u in 0..n {
        for v in 0..n {
            let mut hit = false;
            for len in 1..=max_len {
                let flow = for_each_orbit_word(f, u, len, |w| {
                    if w[len] == v {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                if flow.is_break() {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return if max_len >= n {
                    Verdict::no(Certificate::UnreachablePair { from: u, to: v })
                } else {
                    Verdict::undecided(max_len as u64, format!("no path {u} to {v} found"))
                };
            }
        }
    }
    Verdict::yes(Certificate::Exhaustive { checked: n * n })
}

/// States that start an orbit word of at most `max_len` transitions returning to themselves.
pub fn periodic_oracle(f: &RelationSystem, max_len: usize) -> StateSet {
    let mut out = StateSet::EMPTY;
    for x in 0..f.len() {
        for len in 1..=max_len {
            let flow = for_each_orbit_word(f, x, len, |w| {
                if w[len] == x {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if flow.is_break() {
                out.insert(x);
                break;
            }
        }
    }
    out
}

/// Density of periodic points from [`periodic_oracle`].
pub fn periodic_dense_oracle(f: &RelationSystem, max_len: usize) -> Verdict {
    let p = periodic_oracle(f, max_len);
    match f.states().difference(p).first() {
        None => Verdict::yes(Certificate::Exhaustive { checked: f.len() }),
        Some(state) if max_len >= f.len() => Verdict::no(Certificate::NotPeriodic { state }),
        Some(state) => Verdict::undecided(max_len as u64, format!("no return to state {state} found")),
    }
}

/// `true` when both verdicts are decided and equal, or the oracle is undecided.
pub fn consistent(graph: &Verdict, oracle: &Verdict) -> bool {
    oracle.value == Truth::Undecided || graph.value == oracle.value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn sys(s: &[&[usize]]) -> RelationSystem {
        RelationSystem::from_successors(s).unwrap()
    }

    #[test]
    fn orbit_words_are_lexicographic() {
        let f = sys(&[&[0, 1], &[0]]);
        let mut seen = Vec::new();
        let _ = for_each_orbit_word(&f, 0, 2, |w| {
            seen.push(w.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(seen, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
    }

    #[test]
    fn strong_sensitivity_oracle_examples() {
        let full = sys(&[&[0, 1], &[0, 1]]);
        assert!(strong_sensitivity_oracle(&full, &q(1, 2), 4).unwrap().is_false());
        let cycle = sys(&[&[1], &[0]]);
        assert!(strong_sensitivity_oracle(&cycle, &q(1, 2), 4).unwrap().is_false());
        assert!(strong_sensitivity_oracle(&cycle, &q(1, 2), 0).is_err());
        let three = sys(&[&[1], &[2], &[0]]);
        assert!(strong_sensitivity_oracle(&three, &q(1, 2), 8).unwrap().value.is_decided());
        assert_eq!(
            strong_sensitivity_oracle(&three, &q(1, 2), 2).unwrap().value,
            Truth::Undecided
        );
    }

    #[test]
    fn sensitivity_oracle_examples() {
        assert!(sensitivity_oracle(&sys(&[&[0, 1], &[0, 1]]), 4).is_true());
        assert_eq!(
            sensitivity_oracle(&sys(&[&[1], &[0]]), 4).certificate,
            Certificate::UniqueOrbit { state: 0, prefix: vec![0, 1, 0, 1, 0] }
        );
    }

    #[test]
    fn transitivity_and_periodic_oracles() {
        assert!(transitivity_oracle(&sys(&[&[0, 1], &[0]]), 2).is_true());
        assert!(transitivity_oracle(&sys(&[&[0], &[1]]), 2).is_false());
        assert_eq!(periodic_oracle(&sys(&[&[1], &[1]]), 2), StateSet::singleton(1));
    }
}
