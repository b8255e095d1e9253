//! Stated implications and worked examples as replayable checks.
//!
//! An implication claim is a list of premise checks and a conclusion check
//! over relation systems; it is run over enumerated and random families and
//! the first instance with all premises TRUE and the conclusion FALSE is
//! reported, after greedy minimization. Example claims compare a computed
//! verdict with a stored expected value.

pub mod examples;
pub mod report;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::q;
use crate::relation::oracle as roracle;
use crate::relation::{RelationSystem, StateSet};
use crate::shift::oracle::{lemma31_check, lemma31_literal_check, shift_oracle_with, OracleBounds};
use crate::shift::VertexShift;
use crate::system_file::{to_json, SystemDescription};
use crate::verdict::{Certificate, Part, Truth, Verdict};

pub const DEFAULT_RANDOM_COUNT: usize = 10_000;
pub const DEFAULT_RANDOM_STATES: usize = 4;

/// Where the instances of a claim come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    Builtin,
    Exhaustive { n: usize },
    Random { n: usize, count: usize, seed: u64 },
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Builtin => write!(f, "builtin"),
            Family::Exhaustive { n } => write!(f, "exhaustive({n})"),
            Family::Random { n, count, seed } => write!(f, "random({n}, {count}, {seed})"),
        }
    }
}

/// All systems on exactly `n` states, fibers read as base-`(2^n - 1)` digits
/// with the first state most significant.
pub fn exhaustive_systems(n: usize) -> Result<impl Iterator<Item = RelationSystem>> {
    if !(1..=4).contains(&n) {
        return Err(Error::argument("exhaustive families need 1 <= n <= 4"));
    }
    let base = (1u64 << n) - 1;
    let total = base.pow(n as u32);
    Ok((0..total).map(move |mut k| {
        let mut fibers = vec![StateSet::EMPTY; n];
        for i in (0..n).rev() {
            fibers[i] = StateSet::from_bits(k % base + 1);
            k /= base;
        }
        system_from_fibers(fibers)
    }))
}

/// `count` systems on `n` states, each fiber a uniform nonempty subset.
pub fn random_systems(n: usize, count: usize, seed: u64) -> Result<Vec<RelationSystem>> {
    if !(1..=16).contains(&n) {
        return Err(Error::argument("random families need 1 <= n <= 16"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 1u64 << n;
    Ok((0..count)
        .map(|_| system_from_fibers((0..n).map(|_| StateSet::from_bits(rng.gen_range(1..top))).collect()))
        .collect())
}

fn system_from_fibers(fibers: Vec<StateSet>) -> RelationSystem {
    let labels = (0..fibers.len()).map(|i| i.to_string()).collect();
    RelationSystem::new(labels, fibers).expect("nonempty fibers")
}

pub fn family_instances(family: &Family) -> Result<Vec<RelationSystem>> {
    match family {
        Family::Builtin => Ok(crate::builtin::finite_names()
            .iter()
            .map(|n| crate::builtin::finite_by_name(n).expect("registered"))
            .collect()),
        Family::Exhaustive { n } => Ok(exhaustive_systems(*n)?.collect()),
        Family::Random { n, count, seed } => random_systems(*n, *count, *seed),
    }
}

/// A single checker invocation on a relation system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Surjective,
    PeriodicDense,
    Transitive,
    Sensitive,
    AllOrbitsPeriodic,
    FullFiber,
    Devaney,
    /// `F⁻¹` exists.
    Invertible,
    /// `F` and `F⁻¹` agree on density of periodic points.
    DenseMatchesInverse,
    /// Brute-force strong sensitivity with `δ = 1/2`.
    StronglySensitiveOracle,
    ShiftPeriodicDense,
    ShiftTransitive,
    ShiftSensitive,
    ShiftDevaney,
    /// Closure of σ-periodic points equals the limit of `F` on `P(F)`.
    PeriodicClosure,
    /// Every point of the limit of `F` on `P(F)` is σ-periodic.
    PeriodicRestrictionLiteral,
    /// Graph criteria agree with every brute-force oracle.
    OracleAgreement,
    Not(Box<Check>),
}

/// Oracle depth `2·2^n` used for cross-checks on `n` states.
pub fn oracle_depth(n: usize) -> usize {
    2usize << n
}

pub fn shift_oracle_bounds(n: usize) -> OracleBounds {
    OracleBounds {
        word_len: n + 1,
        horizon: oracle_depth(n),
        period: 1 << n,
    }
}

/// Names of graph criteria whose verdict differs from a decided oracle
/// verdict, plus names of oracles that stayed undecided.
pub fn oracle_disagreements(f: &RelationSystem) -> (Vec<&'static str>, Vec<&'static str>) {
    let n = f.len();
    let depth = oracle_depth(n);
    let shift = VertexShift::build(f);
    let bundle = shift_oracle_with(&shift, shift_oracle_bounds(n));
    let strong = roracle::strong_sensitivity_oracle(f, &q(1, 2), depth).expect("depth >= 1");
    let pairs = [
        ("is_transitive", f.is_transitive(), roracle::transitivity_oracle(f, n)),
        ("periodic_dense", f.periodic_dense(), roracle::periodic_dense_oracle(f, n)),
        ("is_sensitive", f.is_sensitive(), roracle::sensitivity_oracle(f, depth)),
        ("is_strongly_sensitive", f.is_strongly_sensitive(), strong),
        ("shift_transitive", shift.transitive(), bundle.transitive.clone()),
        ("shift_periodic_dense", shift.periodic_dense(), bundle.periodic_dense.clone()),
        ("shift_sensitive", shift.sensitive(), bundle.sensitive.clone()),
    ];
    let mut differ = Vec::new();
    let mut undecided = Vec::new();
    for (name, graph, oracle) in pairs {
        if oracle.value == Truth::Undecided {
            undecided.push(name);
        } else if oracle.value != graph.value {
            differ.push(name);
        }
    }
    (differ, undecided)
}

fn negate(v: Verdict) -> Verdict {
    Verdict::new(v.value.not(), v.certificate)
}

impl Check {
    pub fn name(&self) -> String {
        match self {
            Check::Not(c) => format!("not-{}", c.name()),
            other => serde_json::to_value(other)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
        }
    }

    pub fn eval(&self, f: &RelationSystem) -> Verdict {
        match self {
            Check::Surjective => f.is_surjective(),
            Check::PeriodicDense => f.periodic_dense(),
            Check::Transitive => f.is_transitive(),
            Check::Sensitive => f.is_sensitive(),
            Check::AllOrbitsPeriodic => f.all_orbits_periodic(),
            Check::FullFiber => f.has_full_fiber(),
            Check::Devaney => f.is_devaney(),
            Check::Invertible => match f.invert() {
                Ok(_) => Verdict::yes(Certificate::Exhaustive { checked: f.len() }),
                Err(e) => Verdict::no(Certificate::Note { text: e.to_string() }),
            },
            Check::DenseMatchesInverse => match f.invert() {
                Ok(inv) => {
                    let a = f.periodic_dense();
                    let b = inv.periodic_dense();
                    let same = a.value == b.value;
                    Verdict::new(
                        Truth::from_bool(same),
                        Certificate::Conjunction {
                            parts: vec![
                                Part {
                                    name: "map".into(),
                                    verdict: a,
                                },
                                Part {
                                    name: "inverse".into(),
                                    verdict: b,
                                },
                            ],
                        },
                    )
                }
                Err(e) => Verdict::undecided(0, e.to_string()),
            },
            Check::StronglySensitiveOracle => {
                roracle::strong_sensitivity_oracle(f, &q(1, 2), oracle_depth(f.len())).expect("depth >= 1")
            }
            Check::ShiftPeriodicDense => VertexShift::build(f).periodic_dense(),
            Check::ShiftTransitive => VertexShift::build(f).transitive(),
            Check::ShiftSensitive => VertexShift::build(f).sensitive(),
            Check::ShiftDevaney => VertexShift::build(f).devaney(),
            Check::PeriodicClosure => {
                lemma31_check(f, f.len() + 2, 1 << f.len()).unwrap_or_else(|e| Verdict::undecided(0, e.to_string()))
            }
            Check::PeriodicRestrictionLiteral => lemma31_literal_check(f),
            Check::OracleAgreement => {
                let (differ, undecided) = oracle_disagreements(f);
                if !differ.is_empty() {
                    Verdict::no(Certificate::Note {
                        text: format!("disagreeing: {}", differ.join(", ")),
                    })
                } else if !undecided.is_empty() {
                    Verdict::undecided(oracle_depth(f.len()) as u64, format!("undecided: {}", undecided.join(", ")))
                } else {
                    Verdict::yes(Certificate::Exhaustive { checked: 7 })
                }
            }
            Check::Not(c) => negate(c.eval(f)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub premises: Vec<Check>,
    pub conclusion: Check,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClaimBody {
    Implication(Implication),
    Example(examples::ExampleCheck),
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub body: ClaimBody,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Status {
    HoldsOnFamily,
    Counterexample,
    AgreesWithPaper,
    DisagreesWithPaper,
    Undecided,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::HoldsOnFamily => "HOLDS-ON-FAMILY",
            Status::Counterexample => "COUNTEREXAMPLE",
            Status::AgreesWithPaper => "AGREES-WITH-PAPER",
            Status::DisagreesWithPaper => "DISAGREES-WITH-PAPER",
            Status::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimized: Option<serde_json::Value>,
    pub evidence: Vec<Part>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub instances: usize,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

fn imp(premises: Vec<Check>, conclusion: Check) -> ClaimBody {
    ClaimBody::Implication(Implication { premises, conclusion })
}

/// Every registered implication claim.
pub fn implication_claims() -> Vec<Claim> {
    use Check::*;
    vec![
        Claim {
            id: "L3.1",
            body: imp(vec![], PeriodicClosure),
        },
        Claim {
            id: "L3.1-literal",
            body: imp(vec![], PeriodicRestrictionLiteral),
        },
        Claim {
            id: "T3.1(1)",
            body: imp(vec![PeriodicDense], ShiftPeriodicDense),
        },
        Claim {
            id: "T3.1(1)-surjective",
            body: imp(vec![Surjective, PeriodicDense], ShiftPeriodicDense),
        },
        Claim {
            id: "T3.1(2)",
            body: imp(vec![Surjective, ShiftPeriodicDense], PeriodicDense),
        },
        Claim {
            id: "T3.2",
            body: imp(vec![Invertible], DenseMatchesInverse),
        },
        Claim {
            id: "T3.3",
            body: imp(vec![Surjective, ShiftTransitive], Transitive),
        },
        Claim {
            id: "P4.1",
            body: imp(vec![FullFiber], Not(Box::new(StronglySensitiveOracle))),
        },
        Claim {
            id: "T5.2",
            body: imp(vec![AllOrbitsPeriodic, ShiftSensitive], Sensitive),
        },
        Claim {
            id: "T5.4",
            body: imp(vec![Transitive, PeriodicDense], Sensitive),
        },
        Claim {
            id: "T5.5",
            body: imp(vec![Surjective, ShiftDevaney], Devaney),
        },
        Claim {
            id: "X-ORACLE",
            body: imp(vec![], OracleAgreement),
        },
    ]
}

/// Implication claims followed by example claims.
pub fn registry() -> Vec<Claim> {
    let mut all = implication_claims();
    all.extend(examples::example_claims());
    all
}

pub fn find_claim(id: &str) -> Result<Claim> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::argument(format!("unknown claim id {id:?}")))
}

fn system_value(f: &RelationSystem) -> serde_json::Value {
    serde_json::from_str(&to_json(&SystemDescription::Finite(f.clone()))).expect("valid json")
}

#[derive(Debug)]
enum Outcome {
    PremiseFailed,
    PremiseUndecided,
    Holds,
    ConclusionUndecided,
    Refuted(Vec<Part>),
}

fn evaluate(imp: &Implication, f: &RelationSystem) -> Outcome {
    let mut parts = Vec::new();
    for p in &imp.premises {
        let v = p.eval(f);
        match v.value {
            Truth::False => return Outcome::PremiseFailed,
            Truth::Undecided => return Outcome::PremiseUndecided,
            Truth::True => parts.push(Part {
                name: p.name(),
                verdict: v,
            }),
        }
    }
    let c = imp.conclusion.eval(f);
    match c.value {
        Truth::True => Outcome::Holds,
        Truth::Undecided => Outcome::ConclusionUndecided,
        Truth::False => {
            parts.push(Part {
                name: imp.conclusion.name(),
                verdict: c,
            });
            Outcome::Refuted(parts)
        }
    }
}

/// Whether `f` satisfies every premise and fails the conclusion.
pub fn refutes(imp: &Implication, f: &RelationSystem) -> bool {
    matches!(evaluate(imp, f), Outcome::Refuted(_))
}

/// Smallest number of states a minimized witness is reduced to.
pub const MIN_WITNESS_STATES: usize = 2;

/// Greedy shrinking: delete states while one deletion still refutes, then
/// edges. A result with no refuting single deletion (above the floor) is returned.
pub fn minimize_counterexample(imp: &Implication, witness: &RelationSystem) -> Result<RelationSystem> {
    if !refutes(imp, witness) {
        return Err(Error::argument("witness does not refute the claim"));
    }
    let mut cur = witness.clone();
    'shrink: loop {
        if cur.len() > MIN_WITNESS_STATES {
            for v in 0..cur.len() {
                if let Some(smaller) = cur.without_state(v) {
                    if refutes(imp, &smaller) {
                        cur = smaller;
                        continue 'shrink;
                    }
                }
            }
        }
        for u in 0..cur.len() {
            for w in cur.fiber(u).iter() {
                if let Some(smaller) = cur.without_edge(u, w) {
                    if refutes(imp, &smaller) {
                        cur = smaller;
                        continue 'shrink;
                    }
                }
            }
        }
        return Ok(cur);
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    premises_hold: usize,
    undecided: usize,
}

/// Runs an implication over the families in order.
pub fn run_implication(id: &str, imp: &Implication, families: &[Family]) -> Result<ClaimReport> {
    let mut notes = Vec::new();
    let mut total = Tally::default();
    let mut witness = None;
    for family in families {
        let instances = family_instances(family)?;
        let outcomes: Vec<Outcome> = instances.par_iter().map(|f| evaluate(imp, f)).collect();
        let mut t = Tally {
            instances: instances.len(),
            ..Tally::default()
        };
        let mut first_refuted = None;
        for (i, o) in outcomes.into_iter().enumerate() {
            match o {
                Outcome::PremiseFailed => {}
                Outcome::PremiseUndecided => t.undecided += 1,
                Outcome::Holds => t.premises_hold += 1,
                Outcome::ConclusionUndecided => {
                    t.premises_hold += 1;
                    t.undecided += 1;
                }
                Outcome::Refuted(parts) => {
                    t.premises_hold += 1;
                    if first_refuted.is_none() {
                        first_refuted = Some((i, parts));
                    }
                }
            }
        }
        notes.push(format!(
            "{family}: {} instances, {} satisfy the premises, {} undecided",
            t.instances, t.premises_hold, t.undecided
        ));
        total.instances += t.instances;
        total.premises_hold += t.premises_hold;
        total.undecided += t.undecided;
        if witness.is_none() {
            if let Some((i, evidence)) = first_refuted {
                let inst = &instances[i];
                let min = minimize_counterexample(imp, inst)?;
                let min_evidence = match evaluate(imp, &min) {
                    Outcome::Refuted(p) => p,
                    _ => unreachable!("minimized witness refutes"),
                };
                let mut all_evidence = evidence;
                all_evidence.extend(min_evidence.into_iter().map(|p| Part {
                    name: format!("minimized/{}", p.name),
                    verdict: p.verdict,
                }));
                witness = Some(Witness {
                    label: format!("instance {i} of {family}"),
                    system: Some(system_value(inst)),
                    minimized: Some(system_value(&min)),
                    evidence: all_evidence,
                });
            }
        }
    }
    if total.premises_hold == 0 {
        notes.push("vacuous on family".into());
    }
    let status = if witness.is_some() {
        Status::Counterexample
    } else if total.undecided > 0 {
        Status::Undecided
    } else {
        Status::HoldsOnFamily
    };
    Ok(ClaimReport {
        claim_id: id.to_string(),
        instances: total.instances,
        status,
        witnesses: witness.into_iter().collect(),
        notes,
    })
}

pub fn run_claim(claim: &Claim, families: &[Family]) -> Result<ClaimReport> {
    match &claim.body {
        ClaimBody::Implication(imp) => run_implication(claim.id, imp, families),
        ClaimBody::Example(ex) => Ok(examples::run_example(claim.id, ex)),
    }
}

/// Families `exhaustive(n)` and, if `random_count > 0`, `random(4, count, seed)`.
pub fn default_families(exhaustive: usize, random_count: usize, seed: u64) -> Vec<Family> {
    let mut out = vec![Family::Exhaustive { n: exhaustive }];
    if random_count > 0 {
        out.push(Family::Random {
            n: DEFAULT_RANDOM_STATES,
            count: random_count,
            seed,
        });
    }
    out
}

/// Reports for `ids` (all claims when `None`) in registry order.
pub fn run_claims(ids: Option<&[String]>, families: &[Family]) -> Result<Vec<ClaimReport>> {
    let claims: Vec<Claim> = match ids {
        None => registry(),
        Some(ids) => ids.iter().map(|id| find_claim(id)).collect::<Result<_>>()?,
    };
    claims.iter().map(|c| run_claim(c, families)).collect()
}

/// Runs every example claim.
pub fn paper_example_suite() -> Vec<ClaimReport> {
    examples::example_claims()
        .iter()
        .map(|c| match &c.body {
            ClaimBody::Example(ex) => examples::run_example(c.id, ex),
            ClaimBody::Implication(_) => unreachable!("example registry"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn family_sizes() {
        assert_eq!(exhaustive_systems(1).unwrap().count(), 1);
        assert_eq!(exhaustive_systems(2).unwrap().count(), 9);
        assert_eq!(exhaustive_systems(3).unwrap().count(), 343);
        assert!(exhaustive_systems(0).is_err());
        assert!(exhaustive_systems(5).is_err());
        let first = exhaustive_systems(2).unwrap().next().unwrap();
        assert_eq!(first, RelationSystem::from_successors(&[&[0], &[0]]).unwrap());
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(random_systems(4, 20, 7).unwrap(), random_systems(4, 20, 7).unwrap());
        assert_ne!(random_systems(4, 20, 7).unwrap(), random_systems(4, 20, 8).unwrap());
    }

    fn claim_imp(id: &str) -> Implication {
        match find_claim(id).unwrap().body {
            ClaimBody::Implication(i) => i,
            _ => panic!(),
        }
    }

    #[test]
    fn minimization() {
        let t54 = claim_imp("T5.4");
        let min = minimize_counterexample(&t54, &builtin::three_cycle()).unwrap();
        assert!(min.is_isomorphic(&builtin::two_cycle()));
        let again = minimize_counterexample(&t54, &min).unwrap();
        assert_eq!(again, min);
        assert!(minimize_counterexample(&t54, &builtin::full_two()).is_err());
    }

    #[test]
    fn small_claims() {
        let fams = [Family::Exhaustive { n: 2 }];
        let r = run_claim(&find_claim("T5.4").unwrap(), &fams).unwrap();
        assert_eq!(r.status, Status::Counterexample);
        let r = run_claim(&find_claim("T3.2").unwrap(), &fams).unwrap();
        assert_eq!(r.status, Status::HoldsOnFamily);
        assert!(find_claim("nope").is_err());
    }
}
