//! Worked examples as data: a computation on a built-in instance and the
//! verdict it is expected to produce.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::builtin;
use crate::interval::IntervalUnion;
use crate::metrics::EventuallyPeriodicSeq;
use crate::pl::analysis::{
    find_non_sensitivity_witness, full_fiber_points, pl_is_transitive_bounded, pl_periodic_dense_bounded,
    pl_periodic_points_bounded, singleton_fiber_points, verify_strong_sensitivity,
};
use crate::pl::ratio::ratio_orbit_separation;
use crate::pl::PLMultiMap;
use crate::rational::{q, Rational};
use crate::relation::oracle as roracle;
use crate::relation::RelationSystem;
use crate::shift::oracle::{shift_oracle_with, OracleBounds};
use crate::shift::VertexShift;
use crate::truncated::{forced_ray, point_sensitivity_probe, LimitSystem};
use crate::verdict::{Certificate, Part, Truth, Verdict};

use super::{oracle_depth, shift_oracle_bounds, Claim, ClaimBody, ClaimReport, Status, Witness};

type Frac = (i64, i64);

fn frac(f: Frac) -> Rational {
    q(f.0, f.1)
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiniteProperty {
    Transitive,
    /// σ transitive, cross-checked by bridging words up to the given length.
    LimitTransitive { bridge_len: usize },
    /// The limit is the full shift on all states.
    LimitFullShift,
    LimitSensitive,
    AllStatesPeriodic,
    StronglySensitive,
    Devaney,
    LimitDevaney,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlProperty {
    Transitive { resolution: u32, horizon: usize },
    PeriodicEverywhere { period: usize },
    StronglySensitive { delta: Frac, grid: usize, eps_exponents: (i32, i32), horizon: usize },
    FullFibersExactly { points: Vec<Frac> },
    NoSingletonFibers,
    SensitivityConstant { delta: Frac, horizon: usize },
    StrongDevaney { resolution: u32, horizon: usize, period: usize, delta: Frac, grid: usize, eps_exponents: (i32, i32) },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "on", rename_all = "kebab-case")]
pub enum Computation {
    Finite { system: &'static str, property: FiniteProperty },
    Pl { map: &'static str, inverse: bool, property: PlProperty },
    /// σ on the limit of `F⁻¹` separates some point of the ball around the zero sequence.
    InverseLimitProbe { map: &'static str, eps: Frac, delta: Frac, depth: usize },
    /// `min |y_L - x_L| ≥ ε·2^L` on seeded samples.
    RatioSeparation { samples: usize, seed: u64, max_len: usize },
    /// σ on the limit of `{2x, 3x}` separates near the zero sequence.
    RatioSensitiveAtZero { eps: Frac, delta: Frac, depth: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleCheck {
    pub statement: &'static str,
    pub expected: Truth,
    pub computation: Computation,
}

fn ex(id: &'static str, statement: &'static str, expected: Truth, computation: Computation) -> Claim {
    Claim {
        id,
        body: ClaimBody::Example(ExampleCheck {
            statement,
            expected,
            computation,
        }),
    }
}

fn fin(system: &'static str, property: FiniteProperty) -> Computation {
    Computation::Finite { system, property }
}

fn pl(map: &'static str, inverse: bool, property: PlProperty) -> Computation {
    Computation::Pl { map, inverse, property }
}

pub fn example_claims() -> Vec<Claim> {
    use FiniteProperty as F;
    use Truth::{False, True};
    let tent_grid = PlProperty::StronglySensitive {
        delta: (1, 8),
        grid: 16,
        eps_exponents: (3, 8),
        horizon: 40,
    };
    vec![
        ex("E3.1-map-transitivity", "F is transitive", True, fin("golden-mean", F::Transitive)),
        ex(
            "E3.1-limit-transitivity",
            "σ on lim F is transitive",
            False,
            fin("golden-mean", F::LimitTransitive { bridge_len: 6 }),
        ),
        ex("E4.2-limit-full-shift", "lim F is the full 2-shift", True, fin("full-two", F::LimitFullShift)),
        ex("E4.2-shift-sensitive", "σ on lim F is sensitive", True, fin("full-two", F::LimitSensitive)),
        ex("E4.3-1", "F is strongly sensitive with δ = 1/8", True, pl("tent-with-zero", false, tent_grid.clone())),
        ex(
            "E4.3-2-fiber",
            "F⁻¹ has a full fiber exactly at 0",
            True,
            pl(
                "tent-with-zero",
                true,
                PlProperty::FullFibersExactly { points: vec![(0, 1)] },
            ),
        ),
        ex(
            "E4.3-2",
            "F⁻¹ is strongly sensitive",
            False,
            pl("tent-with-zero", true, tent_grid),
        ),
        ex(
            "E4.3-3",
            "σ on lim F⁻¹ separates points of the 1/3-ball around the zero sequence beyond 1/4",
            False,
            Computation::InverseLimitProbe {
                map: "tent-with-zero",
                eps: (1, 3),
                delta: (1, 4),
                depth: 12,
            },
        ),
        ex(
            "E4.3-4",
            "F is strongly Devaney chaotic",
            True,
            pl(
                "tent-with-zero",
                false,
                PlProperty::StrongDevaney {
                    resolution: 3,
                    horizon: 10,
                    period: 4,
                    delta: (1, 8),
                    grid: 16,
                    eps_exponents: (3, 8),
                },
            ),
        ),
        ex("E4.4-transitive", "F is transitive", True, fin("golden-mean", F::Transitive)),
        ex("E4.4-periodic", "P(F) = {0, 1}", True, fin("golden-mean", F::AllStatesPeriodic)),
        ex(
            "E4.4-strong-sensitivity",
            "F is strongly sensitive",
            False,
            fin("golden-mean", F::StronglySensitive),
        ),
        ex(
            "E4.5-1",
            "F is transitive",
            True,
            pl("full-square", false, PlProperty::Transitive { resolution: 3, horizon: 1 }),
        ),
        ex(
            "E4.5-2",
            "every point is periodic",
            True,
            pl("full-square", false, PlProperty::PeriodicEverywhere { period: 1 }),
        ),
        ex(
            "E4.5-3",
            "F is strongly sensitive",
            False,
            pl(
                "full-square",
                false,
                PlProperty::StronglySensitive {
                    delta: (1, 8),
                    grid: 16,
                    eps_exponents: (3, 8),
                    horizon: 40,
                },
            ),
        ),
        ex(
            "E5.2-1",
            "matched orbits of {2x, 3x} separate by at least ε·2^L",
            True,
            Computation::RatioSeparation {
                samples: 100,
                seed: 0,
                max_len: 20,
            },
        ),
        ex(
            "E5.2-2",
            "σ on lim {2x, 3x} separates near the zero sequence",
            False,
            Computation::RatioSensitiveAtZero {
                eps: (1, 3),
                delta: (1, 4),
                depth: 12,
            },
        ),
        ex(
            "E5.3-1",
            "no fiber of F⁻¹ is a single point",
            True,
            pl("identity-with-full-fibers", true, PlProperty::NoSingletonFibers),
        ),
        ex(
            "E5.3-2",
            "1/8 is a sensitivity constant of F",
            False,
            pl(
                "identity-with-full-fibers",
                false,
                PlProperty::SensitivityConstant {
                    delta: (1, 8),
                    horizon: 64,
                },
            ),
        ),
        ex("E5.6-1", "F is Devaney chaotic", True, fin("golden-mean", F::Devaney)),
        ex("E5.6-2", "σ on lim F is Devaney chaotic", False, fin("golden-mean", F::LimitDevaney)),
    ]
}

fn part(name: &str, verdict: Verdict) -> Part {
    Part {
        name: name.to_string(),
        verdict,
    }
}

// The graph verdict, kept only when the oracle does not contradict it.
fn confirmed(graph: Verdict, oracle: Verdict) -> (Verdict, Vec<Part>) {
    let value = if oracle.value.is_decided() && oracle.value != graph.value {
        Truth::Undecided
    } else {
        graph.value
    };
    let v = Verdict::new(value, graph.certificate.clone());
    (v, vec![part("graph", graph), part("oracle", oracle)])
}

fn finite_system(name: &str) -> RelationSystem {
    builtin::finite_by_name(name).expect("registered builtin")
}

fn pl_map(name: &str, inverse: bool) -> PLMultiMap {
    let f = builtin::pl_by_name(name).expect("registered builtin");
    if inverse {
        f.invert().expect("builtin is invertible")
    } else {
        f
    }
}

fn eps_schedule((lo, hi): (i32, i32)) -> Vec<Rational> {
    (lo..=hi).map(|k| Rational::pow2(-k)).collect()
}

fn eval_finite(f: &RelationSystem, p: FiniteProperty) -> (Verdict, Vec<Part>) {
    let n = f.len();
    let shift = VertexShift::build(f);
    let bundle = || shift_oracle_with(&shift, shift_oracle_bounds(n));
    match p {
        FiniteProperty::Transitive => confirmed(f.is_transitive(), roracle::transitivity_oracle(f, n)),
        FiniteProperty::LimitTransitive { bridge_len } => {
            let b = shift_oracle_with(
                &shift,
                OracleBounds {
                    word_len: bridge_len,
                    horizon: bridge_len,
                    period: 1,
                },
            );
            confirmed(shift.transitive(), b.transitive)
        }
        FiniteProperty::LimitFullShift => {
            let full = shift.core() == f.states() && shift.allowed_steps().len() == n * n;
            let v = Verdict::new(
                Truth::from_bool(full),
                Certificate::Exhaustive {
                    checked: shift.allowed_steps().len(),
                },
            );
            (v.clone(), vec![part("steps", v)])
        }
        FiniteProperty::LimitSensitive => confirmed(shift.sensitive(), bundle().sensitive),
        FiniteProperty::AllStatesPeriodic => {
            let pp = f.periodic_points();
            let oracle = roracle::periodic_oracle(f, n);
            let all = pp.states == f.states();
            let value = if oracle == pp.states {
                Truth::from_bool(all)
            } else {
                Truth::Undecided
            };
            let v = Verdict::new(value, Certificate::Cycles { cycles: pp.cycles });
            (v.clone(), vec![part("graph", v)])
        }
        FiniteProperty::StronglySensitive => confirmed(
            f.is_strongly_sensitive(),
            roracle::strong_sensitivity_oracle(f, &q(1, 2), oracle_depth(n)).expect("depth >= 1"),
        ),
        FiniteProperty::Devaney => {
            let v = f.is_devaney();
            (v.clone(), vec![part("graph", v)])
        }
        FiniteProperty::LimitDevaney => {
            let b = bundle();
            let oracle = Verdict::all(vec![
                ("transitive", b.transitive),
                ("periodic-dense", b.periodic_dense),
                ("sensitive", b.sensitive),
            ]);
            confirmed(shift.devaney(), oracle)
        }
    }
}

fn eval_pl(f: &PLMultiMap, p: &PlProperty) -> (Verdict, Vec<Part>, bool) {
    let single = |v: Verdict| (v.clone(), vec![part("computed", v)], false);
    match p {
        PlProperty::Transitive { resolution, horizon } => {
            single(pl_is_transitive_bounded(f, *resolution, *horizon).expect("valid bounds"))
        }
        PlProperty::PeriodicEverywhere { period } => {
            let pp = pl_periodic_points_bounded(f, *period).expect("valid bound");
            let v = Verdict::new(
                Truth::from_bool(pp.all.is_unit()),
                Certificate::Note {
                    text: format!("periodic points of period at most {period}: {}", pp.all),
                },
            );
            single(v)
        }
        PlProperty::StronglySensitive {
            delta,
            grid,
            eps_exponents,
            horizon,
        } => {
            let v = verify_strong_sensitivity(f, &frac(*delta), *grid, &eps_schedule(*eps_exponents), *horizon)
                .expect("valid search");
            let on_grid = matches!(v.certificate, Certificate::GridWitnesses { .. });
            (v.clone(), vec![part("computed", v)], on_grid)
        }
        PlProperty::FullFibersExactly { points } => {
            let got = full_fiber_points(f);
            let want = IntervalUnion::points(points.iter().copied().map(frac));
            single(Verdict::new(
                Truth::from_bool(got == want),
                Certificate::Note {
                    text: format!("full fibers at {got}"),
                },
            ))
        }
        PlProperty::NoSingletonFibers => {
            let s = singleton_fiber_points(f);
            single(Verdict::new(
                Truth::from_bool(s.is_empty()),
                Certificate::Note {
                    text: format!("single-point fibers at {s}"),
                },
            ))
        }
        PlProperty::SensitivityConstant { delta, horizon } => {
            single(find_non_sensitivity_witness(f, &frac(*delta), *horizon).expect("valid search"))
        }
        PlProperty::StrongDevaney {
            resolution,
            horizon,
            period,
            delta,
            grid,
            eps_exponents,
        } => {
            let strong = verify_strong_sensitivity(f, &frac(*delta), *grid, &eps_schedule(*eps_exponents), *horizon)
                .expect("valid search");
            let on_grid = strong.is_true();
            let v = Verdict::all(vec![
                (
                    "transitive",
                    pl_is_transitive_bounded(f, *resolution, *horizon).expect("valid bounds"),
                ),
                (
                    "periodic-dense",
                    pl_periodic_dense_bounded(f, *resolution, *period).expect("valid bounds"),
                ),
                ("strongly-sensitive", strong),
            ]);
            (v.clone(), vec![part("computed", v)], on_grid)
        }
    }
}

fn ratio_samples(samples: usize, seed: u64, max_len: usize) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x0 = q(rng.gen_range(0..=64), rng.gen_range(1..=64));
        let eps = q(rng.gen_range(1..=64), rng.gen_range(1..=256));
        for l in 1..=max_len {
            let sep = ratio_orbit_separation(&x0, &eps, l).expect("valid input");
            if sep < &eps * &Rational::pow2(l as i32) {
                return Verdict::no(Certificate::Note {
                    text: format!("x0 = {x0}, eps = {eps}, L = {l}: separation {sep}"),
                });
            }
        }
    }
    Verdict::yes(Certificate::Exhaustive {
        checked: samples * max_len,
    })
}

fn evaluate(c: &Computation) -> (Verdict, Vec<Part>, bool) {
    match c {
        Computation::Finite { system, property } => {
            let (v, parts) = eval_finite(&finite_system(system), *property);
            (v, parts, false)
        }
        Computation::Pl { map, inverse, property } => eval_pl(&pl_map(map, *inverse), property),
        Computation::InverseLimitProbe { map, eps, delta, depth } => {
            let sys = LimitSystem::inverse(pl_map(map, false));
            let zero = EventuallyPeriodicSeq::constant(Rational::zero());
            let v = point_sensitivity_probe(&sys, &zero, &frac(*eps), &frac(*delta), *depth).expect("valid probe");
            let ray = forced_ray(&sys, &Rational::zero(), *depth).expect("depth >= 1");
            (v.clone(), vec![part("probe", v), part("forced-ray", ray)], false)
        }
        Computation::RatioSeparation {
            samples,
            seed,
            max_len,
        } => {
            let v = ratio_samples(*samples, *seed, *max_len);
            (v.clone(), vec![part("computed", v)], false)
        }
        Computation::RatioSensitiveAtZero { eps, delta, depth } => {
            let sys = LimitSystem::Ratio;
            let zero = EventuallyPeriodicSeq::constant(Rational::zero());
            let ray = forced_ray(&sys, &Rational::zero(), *depth).expect("depth >= 1");
            let probe = point_sensitivity_probe(&sys, &zero, &frac(*eps), &frac(*delta), *depth).expect("valid probe");
            let value = if ray.is_true() { probe.value } else { Truth::Undecided };
            let v = Verdict::new(value, probe.certificate.clone());
            (v, vec![part("forced-ray", ray), part("probe", probe)], false)
        }
    }
}

pub fn run_example(id: &str, ex: &ExampleCheck) -> ClaimReport {
    let (computed, evidence, on_grid) = evaluate(&ex.computation);
    let status = match computed.value {
        Truth::Undecided => Status::Undecided,
        v if v == ex.expected => Status::AgreesWithPaper,
        _ => Status::DisagreesWithPaper,
    };
    let mut notes = vec![
        format!("statement: {}", ex.statement),
        format!("expected {}, computed {}", ex.expected, computed.value),
    ];
    if on_grid {
        notes.push("TRUE-on-grid: grid witnesses are evidence, not a proof over the continuum".into());
    }
    ClaimReport {
        claim_id: id.to_string(),
        instances: 1,
        status,
        witnesses: vec![Witness {
            label: serde_json::to_string(&ex.computation).expect("serializable"),
            system: None,
            minimized: None,
            evidence,
        }],
        notes,
    }
}
