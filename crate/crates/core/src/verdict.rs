//! Three-valued verdicts with replayable certificates.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::interval::IntervalUnion;
use crate::metrics::EventuallyPeriodicSeq;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Truth {
    True,
    False,
    Undecided,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn is_decided(self) -> bool {
        self != Truth::Undecided
    }

    /// Three-valued conjunction: any FALSE wins, then any UNDECIDED.
    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::Undecided, _) | (_, Truth::Undecided) => Truth::Undecided,
            _ => Truth::True,
        }
    }

    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Undecided => Truth::Undecided,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "TRUE",
            Truth::False => "FALSE",
            Truth::Undecided => "UNDECIDED",
        })
    }
}

/// One row of a strong-sensitivity witness table on `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationRow {
    pub x: Rational,
    pub epsilon: Rational,
    pub y: Rational,
    pub n: usize,
    /// The orbit `y_0, …, y_n` of `y`.
    pub orbit: Vec<Rational>,
    /// `d(y_n, F^n(x))`.
    pub distance: Rational,
}

/// A named sub-verdict inside a conjunction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub name: String,
    pub verdict: Verdict,
}

/// Evidence attached to a [`Verdict`]. State indices refer to the system's
/// canonical state order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Every one of `checked` cases satisfied the property.
    Exhaustive { checked: usize },
    /// A search stopped at `bound` without deciding.
    BoundExhausted { bound: u64, detail: String },
    MissingPredecessor { state: usize },
    /// Shortest witness path length for every ordered state pair.
    PathLengths { lengths: Vec<Vec<usize>> },
    UnreachablePair { from: usize, to: usize },
    /// For `epsilon` below the least positive distance the ball around
    /// `state` is `{state}`, so every candidate orbit stays in `F^n(state)`.
    SmallBall { state: usize, epsilon: Rational },
    SensitivityConstant { delta: Rational },
    /// The unique infinite continuation from `start`.
    DeterministicRay { start: usize, ray: EventuallyPeriodicSeq<usize> },
    FullFiber { state: usize },
    Branching { state: usize, successors: Vec<usize> },
    Transient { state: usize },
    /// A witness cycle through each listed state.
    Cycles { cycles: BTreeMap<usize, Vec<usize>> },
    NotPeriodic { state: usize },
    /// Oracle: `y` in the ball has an orbit with `y_n ∉ F^n(x)`.
    StateSeparations { rows: Vec<(usize, Rational, usize, usize)> },
    /// Oracle: no separating orbit exists around `state` at radius `epsilon`.
    NoSeparation { state: usize, epsilon: Rational, horizon: usize },
    OrbitPair { state: usize, first: Vec<usize>, second: Vec<usize> },
    UniqueOrbit { state: usize, prefix: Vec<usize> },
    Word { word: Vec<usize> },
    WordPair { from: Vec<usize>, to: Vec<usize> },
    WordDifference { word: Vec<usize>, in_periodic_closure: bool, in_restricted_limit: bool },
    NonPeriodicPoint { point: EventuallyPeriodicSeq<usize> },
    Conjunction { parts: Vec<Part> },
    FullFiberAt { x: Rational },
    GridWitnesses { rows: Vec<SeparationRow> },
    GridFailures { failures: Vec<(Rational, Rational)> },
    BasisTable { resolution: u32, steps: Vec<(usize, usize, usize)> },
    BasisPairUnreached { from: IntervalUnion, to: IntervalUnion, horizon: usize },
    PeriodicCells { resolution: u32, witnesses: Vec<(usize, Rational, usize)> },
    CellWithoutPeriodicPoint { cell: IntervalUnion, period_bound: usize },
    /// `region` contains the ball around `x`, is forward invariant and has
    /// diameter at most the tolerance, so no orbits from the ball separate.
    TrappingRegion { x: Rational, epsilon: Rational, region: IntervalUnion },
    ExactAt { n: usize },
    LscFailure { x: Rational, open_set: IntervalUnion, preimage: IntervalUnion },
    FirstViolation { index: usize },
    /// Every continuation from the head is a single point.
    ForcedRay { ray: EventuallyPeriodicSeq<Rational> },
    /// Coordinate `index` is the first with more than one continuation.
    BranchesAt { index: usize, continuations: IntervalUnion },
    /// Forced for the whole search depth without a repeat.
    ForcedPrefix { coords: Vec<Rational> },
    LimitSeparation { y: EventuallyPeriodicSeq<Rational>, n: usize, rho_ball: Rational, rho_separated: Rational },
    /// Every point of the ball stays within `bound` of the base under all shifts.
    ContractionBound { bound: Rational },
    Note { text: String },
}

/// A decided or undecided answer to a yes/no property together with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: Truth,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn new(value: Truth, certificate: Certificate) -> Self {
        Verdict { value, certificate }
    }

    pub fn yes(certificate: Certificate) -> Self {
        Self::new(Truth::True, certificate)
    }

    pub fn no(certificate: Certificate) -> Self {
        Self::new(Truth::False, certificate)
    }

    pub fn undecided(bound: u64, detail: impl Into<String>) -> Self {
        Self::new(
            Truth::Undecided,
            Certificate::BoundExhausted {
                bound,
                detail: detail.into(),
            },
        )
    }

    pub fn is_true(&self) -> bool {
        self.value == Truth::True
    }

    pub fn is_false(&self) -> bool {
        self.value == Truth::False
    }

    /// Conjunction of named sub-verdicts.
    pub fn all(parts: Vec<(&str, Verdict)>) -> Self {
        let value = parts.iter().fold(Truth::True, |acc, (_, v)| acc.and(v.value));
        Verdict::new(
            value,
            Certificate::Conjunction {
                parts: parts
                    .into_iter()
                    .map(|(name, verdict)| Part {
                        name: name.to_string(),
                        verdict,
                    })
                    .collect(),
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_valued_and() {
        use Truth::*;
        assert_eq!(True.and(True), True);
        assert_eq!(True.and(Undecided), Undecided);
        assert_eq!(Undecided.and(False), False);
        assert_eq!(Undecided.not(), Undecided);
    }

    #[test]
    fn conjunction_value() {
        let v = Verdict::all(vec![
            ("a", Verdict::yes(Certificate::Exhaustive { checked: 1 })),
            ("b", Verdict::no(Certificate::Transient { state: 0 })),
        ]);
        assert!(v.is_false());
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.starts_with("{\"value\":\"FALSE\",\"certificate\":{\"kind\":\"conjunction\""));
    }
}
