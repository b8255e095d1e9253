//! Ground metrics, the weighted sequence metric on `X^ℕ`, and Hausdorff
//! distances, all in exact arithmetic.
//!
//! Both supported ground spaces have diameter 1: the discrete 0/1 metric on a
//! finite state set and `|x - y|` on `[0, 1]`. The sequence metric is the
//! un-normalized series `Σ d(x_i, y_i) / 2^i`, so sequence spaces have
//! diameter 2.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::rational::Rational;

/// The metric on the base space of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroundMetric {
    /// `d(a, b) = 1` for `a != b` on the states `0..states`.
    Discrete { states: usize },
    /// `d(x, y) = |x - y|` on `[0, 1]`.
    UnitInterval,
}

impl GroundMetric {
    pub fn diameter(&self) -> Rational {
        Rational::one()
    }
}

/// A coordinate type that a [`GroundMetric`] knows how to measure.
pub trait Coordinate: Clone + Eq + fmt::Debug {
    fn distance(metric: &GroundMetric, a: &Self, b: &Self) -> Result<Rational>;
}

impl Coordinate for usize {
    fn distance(metric: &GroundMetric, a: &usize, b: &usize) -> Result<Rational> {
        match metric {
            GroundMetric::Discrete { states } => {
                if a >= states || b >= states {
                    return Err(Error::domain(format!(
                        "state index out of range for a {states}-state space"
                    )));
                }
                Ok(if a == b { Rational::zero() } else { Rational::one() })
            }
            GroundMetric::UnitInterval => Err(Error::domain("state index used with the interval metric")),
        }
    }
}

impl Coordinate for Rational {
    fn distance(metric: &GroundMetric, a: &Rational, b: &Rational) -> Result<Rational> {
        match metric {
            GroundMetric::UnitInterval => {
                if !a.in_unit() || !b.in_unit() {
                    return Err(Error::domain(format!("coordinate outside [0, 1]: {a} or {b}")));
                }
                Ok((a - b).abs())
            }
            GroundMetric::Discrete { .. } => Err(Error::domain("real coordinate used with the discrete metric")),
        }
    }
}

/// `d(a, b)` under `metric`.
pub fn ground_distance<C: Coordinate>(metric: &GroundMetric, a: &C, b: &C) -> Result<Rational> {
    C::distance(metric, a, b)
}

/// The sequence `preperiod ++ cycle ++ cycle ++ ...`, stored in canonical
/// form (primitive cycle, shortest preperiod) so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EventuallyPeriodicSeq<T> {
    preperiod: Vec<T>,
    cycle: Vec<T>,
}

impl<T: Clone + Eq> EventuallyPeriodicSeq<T> {
    pub fn new(preperiod: Vec<T>, cycle: Vec<T>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::argument("eventually periodic sequence needs a nonempty cycle"));
        }
        let mut seq = EventuallyPeriodicSeq { preperiod, cycle };
        seq.canonicalize();
        Ok(seq)
    }

    pub fn periodic(cycle: Vec<T>) -> Result<Self> {
        Self::new(Vec::new(), cycle)
    }

    pub fn constant(x: T) -> Self {
        EventuallyPeriodicSeq {
            preperiod: Vec::new(),
            cycle: vec![x],
        }
    }

    fn canonicalize(&mut self) {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| self.cycle[i] == self.cycle[i - d]))
            .unwrap_or(n);
        self.cycle.truncate(period);
        while let Some(last) = self.preperiod.last() {
            if last != self.cycle.last().expect("nonempty cycle") {
                break;
            }
            self.preperiod.pop();
            self.cycle.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[T] {
        &self.preperiod
    }

    pub fn cycle(&self) -> &[T] {
        &self.cycle
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// The `i`-th coordinate.
    pub fn get(&self, i: usize) -> &T {
        if i < self.preperiod.len() {
            &self.preperiod[i]
        } else {
            &self.cycle[(i - self.preperiod.len()) % self.cycle.len()]
        }
    }

    pub fn prefix(&self, k: usize) -> Vec<T> {
        (0..k).map(|i| self.get(i).clone()).collect()
    }

    /// `σ^n` of the sequence.
    pub fn shift_by(&self, n: usize) -> Self {
        if n <= self.preperiod.len() {
            EventuallyPeriodicSeq {
                preperiod: self.preperiod[n..].to_vec(),
                cycle: self.cycle.clone(),
            }
        } else {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left((n - self.preperiod.len()) % self.cycle.len());
            EventuallyPeriodicSeq {
                preperiod: Vec::new(),
                cycle,
            }
        }
    }

    pub fn map<U: Clone + Eq, F: Fn(&T) -> U>(&self, f: F) -> EventuallyPeriodicSeq<U> {
        let mut out = EventuallyPeriodicSeq {
            preperiod: self.preperiod.iter().map(&f).collect(),
            cycle: self.cycle.iter().map(&f).collect(),
        };
        out.canonicalize();
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for EventuallyPeriodicSeq<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.preperiod {
            write!(f, "{x:?}, ")?;
        }
        let cycle: Vec<String> = self.cycle.iter().map(|x| format!("{x:?}")).collect();
        write!(f, "({})^∞", cycle.join(", "))
    }
}

/// Exact `ρ(x, y) = Σ_{i≥0} d(x_i, y_i) / 2^i`.
///
/// Both sequences are aligned to a common preperiod `P` and common cycle
/// length `L`; the value is the finite head plus the cycle block times
/// `1 / (1 - 2^{-L})`.
pub fn rho_exact<C: Coordinate>(
    x: &EventuallyPeriodicSeq<C>,
    y: &EventuallyPeriodicSeq<C>,
    metric: &GroundMetric,
) -> Result<Rational> {
    let head = x.preperiod.len().max(y.preperiod.len());
    let period = x.cycle.len().lcm(&y.cycle.len());
    let weight = |i: usize| Rational::pow2(-(i as i32));
    let mut finite = Rational::zero();
    for i in 0..head {
        finite = finite + ground_distance(metric, x.get(i), y.get(i))? * weight(i);
    }
    let mut block = Rational::zero();
    for i in head..head + period {
        block = block + ground_distance(metric, x.get(i), y.get(i))? * weight(i);
    }
    let geometric = Rational::one() / (Rational::one() - Rational::pow2(-(period as i32)));
    Ok(finite + block * geometric)
}

/// Bracket for `ρ` over all completions of two equal-length prefixes:
/// the head sum, and the head sum plus the diameter-1 tail bound `2^{1-k}`.
pub fn rho_bounds<C: Coordinate>(x: &[C], y: &[C], metric: &GroundMetric) -> Result<(Rational, Rational)> {
    if x.len() != y.len() {
        return Err(Error::argument(format!(
            "prefix lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() {
        return Err(Error::argument("prefixes must have length at least 1"));
    }
    let mut lower = Rational::zero();
    for (i, (a, b)) in x.iter().zip(y).enumerate() {
        lower = lower + ground_distance(metric, a, b)? * Rational::pow2(-(i as i32));
    }
    let upper = &lower + Rational::pow2(1 - x.len() as i32);
    Ok((lower, upper))
}

/// Hausdorff distance between nonempty finite coordinate sets.
pub fn hausdorff_finite<C: Coordinate + Ord>(
    a: &BTreeSet<C>,
    b: &BTreeSet<C>,
    metric: &GroundMetric,
) -> Result<Rational> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::argument("Hausdorff distance needs nonempty sets"));
    }
    let directed = |from: &BTreeSet<C>, to: &BTreeSet<C>| -> Result<Rational> {
        let mut worst = Rational::zero();
        for p in from {
            let mut best: Option<Rational> = None;
            for r in to {
                let d = ground_distance(metric, p, r)?;
                if best.as_ref().is_none_or(|b| &d < b) {
                    best = Some(d);
                }
            }
            worst = worst.max(best.expect("nonempty"));
        }
        Ok(worst)
    };
    Ok(directed(a, b)?.max(directed(b, a)?))
}

/// Hausdorff distance between nonempty subsets of `[0, 1]`.
pub fn hausdorff_intervals(a: &IntervalUnion, b: &IntervalUnion) -> Result<Rational> {
    a.hausdorff(b)
        .ok_or_else(|| Error::argument("Hausdorff distance needs nonempty sets"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn disc(n: usize) -> GroundMetric {
        GroundMetric::Discrete { states: n }
    }

    #[test]
    fn ground_distance_examples() {
        assert_eq!(ground_distance(&disc(2), &0usize, &1usize).unwrap(), Rational::one());
        assert_eq!(ground_distance(&disc(2), &0usize, &0usize).unwrap(), Rational::zero());
        assert_eq!(
            ground_distance(&GroundMetric::UnitInterval, &q(1, 4), &q(5, 8)).unwrap(),
            q(3, 8)
        );
        assert!(matches!(
            ground_distance(&disc(2), &0usize, &2usize),
            Err(Error::Domain(_))
        ));
        assert!(ground_distance(&GroundMetric::UnitInterval, &q(3, 2), &q(0, 1)).is_err());
    }

    #[test]
    fn canonical_form() {
        let s = EventuallyPeriodicSeq::new(vec![1, 0, 1], vec![0, 1, 0, 1]).unwrap();
        assert!(s.preperiod().is_empty());
        assert_eq!(s.cycle(), &[1, 0]);
        let t = EventuallyPeriodicSeq::new(vec![2], vec![0, 0]).unwrap();
        assert_eq!(t.preperiod(), &[2]);
        assert_eq!(t.cycle(), &[0]);
        assert!(EventuallyPeriodicSeq::<usize>::new(vec![1], vec![]).is_err());
    }

    #[test]
    fn rho_exact_examples() {
        let m = disc(2);
        let zeros = EventuallyPeriodicSeq::constant(0usize);
        let one_then_zeros = EventuallyPeriodicSeq::new(vec![1usize], vec![0]).unwrap();
        assert_eq!(rho_exact(&zeros, &one_then_zeros, &m).unwrap(), Rational::one());
        let alt = EventuallyPeriodicSeq::periodic(vec![0usize, 1]).unwrap();
        let anti = EventuallyPeriodicSeq::periodic(vec![1usize, 0]).unwrap();
        assert_eq!(rho_exact(&alt, &anti, &m).unwrap(), Rational::from_int(2));
        assert_eq!(rho_exact(&alt, &alt, &m).unwrap(), Rational::zero());
    }

    #[test]
    fn rho_bounds_examples() {
        let m = disc(2);
        assert_eq!(rho_bounds(&[0usize], &[1], &m).unwrap(), (q(1, 1), q(2, 1)));
        assert_eq!(rho_bounds(&[0usize, 0, 0], &[0, 0, 0], &m).unwrap(), (q(0, 1), q(1, 4)));
        assert_eq!(rho_bounds(&[0usize, 1], &[0, 0], &m).unwrap(), (q(1, 2), q(1, 1)));
        assert!(matches!(rho_bounds(&[0usize], &[0, 1], &m), Err(Error::Argument(_))));
    }

    #[test]
    fn hausdorff_examples() {
        let a: BTreeSet<usize> = [0].into();
        let b: BTreeSet<usize> = [1].into();
        assert_eq!(hausdorff_finite(&a, &b, &disc(2)).unwrap(), Rational::one());
        assert_eq!(
            hausdorff_intervals(&IntervalUnion::closed(q(0, 1), q(1, 2)), &IntervalUnion::unit()).unwrap(),
            q(1, 2)
        );
        let c = IntervalUnion::closed(q(1, 4), q(3, 4));
        assert_eq!(hausdorff_intervals(&c, &c).unwrap(), Rational::zero());
        assert!(hausdorff_finite(&BTreeSet::<usize>::new(), &b, &disc(2)).is_err());
    }

    #[test]
    fn shift_by_wraps_cycle() {
        let s = EventuallyPeriodicSeq::new(vec![5usize, 6], vec![1, 2, 3]).unwrap();
        assert_eq!(s.shift_by(1).prefix(4), vec![6, 1, 2, 3]);
        assert_eq!(s.shift_by(4).prefix(3), vec![3, 1, 2]);
    }
}
