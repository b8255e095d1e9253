//! Set-valued maps on finite discrete spaces.
//!
//! A [`RelationSystem`] is a directed graph in which every state has at least
//! one successor; the fiber `F(x)` is the successor set. On a finite discrete
//! space every nonempty subset is open, so each topological property reduces
//! to a finite graph question. Orbits follow the forward convention
//! `x_{i+1} ∈ F(x_i)`.

pub mod oracle;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metrics::{EventuallyPeriodicSeq, GroundMetric};
use crate::rational::q;
use crate::verdict::{Certificate, Verdict};

/// Largest supported state count (states are bits of a `u64`).
pub const MAX_STATES: usize = 64;

/// A subset of `0..MAX_STATES`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateSet(u64);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn from_bits(bits: u64) -> Self {
        StateSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        StateSet(1 << i)
    }

    /// `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: StateSet) -> StateSet {
        StateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: StateSet) -> StateSet {
        StateSet(self.0 & other.0)
    }

    pub fn difference(self, other: StateSet) -> StateSet {
        StateSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = StateSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for StateSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// A set-valued map on a finite state set with nonempty fibers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelationSystem {
    labels: Vec<String>,
    fibers: Vec<StateSet>,
}

/// Periodic states with a shortest witness cycle for each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicPoints {
    pub states: StateSet,
    /// `cycles[x]` lists `x, x_1, …, x_{m-1}` with `x ∈ F(x_{m-1})`.
    pub cycles: BTreeMap<usize, Vec<usize>>,
}

impl RelationSystem {
    pub fn new(labels: Vec<String>, fibers: Vec<StateSet>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::argument("a relation system needs at least one state"));
        }
        if n > MAX_STATES {
            return Err(Error::argument(format!("at most {MAX_STATES} states are supported")));
        }
        if fibers.len() != n {
            return Err(Error::argument("one fiber per state is required"));
        }
        for (i, f) in fibers.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::argument(format!("fiber of state {:?} is empty", labels[i])));
            }
            if !f.is_subset(StateSet::full(n)) {
                return Err(Error::domain(format!("fiber of state {:?} names an unknown state", labels[i])));
            }
        }
        Ok(RelationSystem { labels, fibers })
    }

    /// States labelled `"0"`, `"1"`, … with the given successor lists.
    pub fn from_successors(successors: &[&[usize]]) -> Result<Self> {
        let labels = (0..successors.len()).map(|i| i.to_string()).collect();
        let n = successors.len();
        let mut fibers = Vec::with_capacity(n);
        for succ in successors {
            if succ.iter().any(|&s| s >= n) {
                return Err(Error::domain("successor index out of range"));
            }
            fibers.push(succ.iter().copied().collect());
        }
        Self::new(labels, fibers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn fiber(&self, x: usize) -> StateSet {
        self.fibers[x]
    }

    pub fn fibers(&self) -> &[StateSet] {
        &self.fibers
    }

    pub fn states(&self) -> StateSet {
        StateSet::full(self.len())
    }

    pub fn metric(&self) -> GroundMetric {
        GroundMetric::Discrete { states: self.len() }
    }

    fn check_set(&self, s: StateSet) -> Result<()> {
        if s.is_subset(self.states()) {
            Ok(())
        } else {
            Err(Error::domain(format!("state set {s:?} is not within a {}-state space", self.len())))
        }
    }

    fn check_state(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::domain(format!("unknown state index {x}")))
        }
    }

    /// `F(S) = ⋃_{x∈S} F(x)`.
    pub fn image(&self, s: StateSet) -> Result<StateSet> {
        self.check_set(s)?;
        Ok(self.image_unchecked(s))
    }

    pub(crate) fn image_unchecked(&self, s: StateSet) -> StateSet {
        s.iter().fold(StateSet::EMPTY, |acc, x| acc.union(self.fibers[x]))
    }

    /// `F^k(x)`, with `F^0(x) = {x}`.
    pub fn iterate(&self, x: usize, k: u64) -> Result<StateSet> {
        self.check_state(x)?;
        let mut seen: BTreeMap<StateSet, u64> = BTreeMap::new();
        let mut current = StateSet::singleton(x);
        let mut step = 0u64;
        while step < k {
            if let Some(&first) = seen.get(&current) {
                // The powerset sequence has entered a cycle; jump ahead.
                let period = step - first;
                let remaining = (k - step) % period;
                for _ in 0..remaining {
                    current = self.image_unchecked(current);
                }
                return Ok(current);
            }
            seen.insert(current, step);
            current = self.image_unchecked(current);
            step += 1;
        }
        Ok(current)
    }

    /// The transposed relation `F^{-1}(x) = {y : x ∈ F(y)}`.
    pub fn invert(&self) -> Result<RelationSystem> {
        let n = self.len();
        let mut inv = vec![StateSet::EMPTY; n];
        for (y, f) in self.fibers.iter().enumerate() {
            for x in f.iter() {
                inv[x].insert(y);
            }
        }
        if let Some(x) = inv.iter().position(|s| s.is_empty()) {
            return Err(Error::NotInvertible {
                state: self.labels[x].clone(),
            });
        }
        Ok(RelationSystem {
            labels: self.labels.clone(),
            fibers: inv,
        })
    }

    /// `F(X) = X`.
    pub fn is_surjective(&self) -> Verdict {
        let missing = self.states().difference(self.image_unchecked(self.states()));
        match missing.first() {
            Some(state) => Verdict::no(Certificate::MissingPredecessor { state }),
            None => Verdict::yes(Certificate::Exhaustive { checked: self.len() }),
        }
    }

    fn shortest_paths_from(&self, u: usize) -> Vec<Option<usize>> {
        // dist[v] = least length >= 1 of a path u -> v
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for v in self.fibers[u].iter() {
            if dist[v].is_none() {
                dist[v] = Some(1);
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued");
            for w in self.fibers[v].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn shortest_cycle_through(&self, x: usize) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<usize>> = vec![None; self.len()];
        let mut seen = StateSet::singleton(x);
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            for w in self.fibers[v].iter() {
                if w == x {
                    let mut path = vec![v];
                    let mut cur = v;
                    while let Some(p) = parent[cur] {
                        path.push(p);
                        cur = p;
                    }
                    if *path.last().expect("nonempty") != x {
                        path.push(x);
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen.contains(w) {
                    seen.insert(w);
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// States lying on a directed cycle, each with a shortest witness cycle.
    pub fn periodic_points(&self) -> PeriodicPoints {
        let mut states = StateSet::EMPTY;
        let mut cycles = BTreeMap::new();
        for x in 0..self.len() {
            if let Some(c) = self.shortest_cycle_through(x) {
                states.insert(x);
                cycles.insert(x, c);
            }
        }
        PeriodicPoints { states, cycles }
    }

    /// Density of periodic points; on a discrete space this means every state is periodic.
    pub fn periodic_dense(&self) -> Verdict {
        let p = self.periodic_points();
        match self.states().difference(p.states).first() {
            Some(state) => Verdict::no(Certificate::NotPeriodic { state }),
            None => Verdict::yes(Certificate::Cycles { cycles: p.cycles }),
        }
    }

    /// Every ordered pair `(u, v)` is joined by an orbit word of length ≥ 1.
    pub fn is_transitive(&self) -> Verdict {
        let mut lengths = Vec::with_capacity(self.len());
        for u in 0..self.len() {
            let dist = self.shortest_paths_from(u);
            if let Some(to) = dist.iter().position(Option::is_none) {
                return Verdict::no(Certificate::UnreachablePair { from: u, to });
            }
            lengths.push(dist.into_iter().map(|d| d.expect("checked")).collect());
        }
        Verdict::yes(Certificate::PathLengths { lengths })
    }

    /// Always FALSE on a finite space: below the least positive distance the
    /// only candidate is `y = x`, whose orbit points all lie in `F^n(x)`.
    pub fn is_strongly_sensitive(&self) -> Verdict {
        Verdict::no(Certificate::SmallBall {
            state: 0,
            epsilon: q(1, 2),
        })
    }

    /// The forced walk from `x` if `x` has a unique infinite orbit.
    pub fn deterministic_ray(&self, x: usize) -> Option<EventuallyPeriodicSeq<usize>> {
        let mut walk = vec![x];
        let mut cur = x;
        loop {
            let f = self.fibers[cur];
            if f.len() != 1 {
                return None;
            }
            let next = f.first().expect("singleton");
            if let Some(pos) = walk.iter().position(|&s| s == next) {
                let cycle = walk.split_off(pos);
                return Some(EventuallyPeriodicSeq::new(walk, cycle).expect("nonempty cycle"));
            }
            walk.push(next);
            cur = next;
        }
    }

    /// TRUE iff every state has at least two distinct infinite orbits.
    pub fn is_sensitive(&self) -> Verdict {
        for x in 0..self.len() {
            if let Some(ray) = self.deterministic_ray(x) {
                return Verdict::no(Certificate::DeterministicRay { start: x, ray });
            }
        }
        Verdict::yes(Certificate::SensitivityConstant { delta: q(1, 2) })
    }

    /// TRUE iff the graph is a disjoint union of cycles.
    pub fn all_orbits_periodic(&self) -> Verdict {
        for x in 0..self.len() {
            let f = self.fibers[x];
            if f.len() >= 2 {
                return Verdict::no(Certificate::Branching {
                    state: x,
                    successors: f.iter().collect(),
                });
            }
        }
        let periodic = self.periodic_points().states;
        match self.states().difference(periodic).first() {
            Some(state) => Verdict::no(Certificate::Transient { state }),
            None => Verdict::yes(Certificate::Exhaustive { checked: self.len() }),
        }
    }

    /// Some fiber equals the whole state set.
    pub fn has_full_fiber(&self) -> Verdict {
        match self.fibers.iter().position(|&f| f == self.states()) {
            Some(state) => Verdict::yes(Certificate::FullFiber { state }),
            None => Verdict::no(Certificate::Exhaustive { checked: self.len() }),
        }
    }

    pub fn is_devaney(&self) -> Verdict {
        Verdict::all(vec![
            ("transitive", self.is_transitive()),
            ("periodic-dense", self.periodic_dense()),
            ("sensitive", self.is_sensitive()),
        ])
    }

    pub fn is_strong_devaney(&self) -> Verdict {
        Verdict::all(vec![
            ("transitive", self.is_transitive()),
            ("periodic-dense", self.periodic_dense()),
            ("strongly-sensitive", self.is_strongly_sensitive()),
        ])
    }

    /// The system on `keep` with fibers `F(x) ∩ keep`, and the original index
    /// of each new state. `None` if some restricted fiber is empty.
    pub fn restrict(&self, keep: StateSet) -> Option<(RelationSystem, Vec<usize>)> {
        let old: Vec<usize> = keep.iter().filter(|&x| x < self.len()).collect();
        if old.is_empty() {
            return None;
        }
        let mut fibers = Vec::with_capacity(old.len());
        for &x in &old {
            let f = self.fibers[x].intersection(keep);
            if f.is_empty() {
                return None;
            }
            fibers.push(f.iter().map(|s| old.iter().position(|&o| o == s).expect("kept")).collect());
        }
        let labels = old.iter().map(|&x| self.labels[x].clone()).collect();
        Some((RelationSystem { labels, fibers }, old))
    }

    /// Delete state `v`. Predecessors of `v` first lose the edge; any
    /// predecessor left without successors is rerouted through `F(v)`.
    pub fn without_state(&self, v: usize) -> Option<RelationSystem> {
        if self.len() <= 1 || v >= self.len() {
            return None;
        }
        let keep = self.states().difference(StateSet::singleton(v));
        let bypass = self.fibers[v].difference(StateSet::singleton(v));
        let mut patched = self.fibers.clone();
        for (u, f) in patched.iter_mut().enumerate() {
            if u != v && f.contains(v) {
                let mut g = f.difference(StateSet::singleton(v));
                if g.is_empty() {
                    g = bypass;
                }
                *f = g;
            }
        }
        let tmp = RelationSystem {
            labels: self.labels.clone(),
            fibers: patched,
        };
        tmp.restrict(keep).map(|(s, _)| s)
    }

    /// Delete the edge `u → w` if `u` keeps another successor.
    pub fn without_edge(&self, u: usize, w: usize) -> Option<RelationSystem> {
        let f = self.fibers.get(u)?;
        if !f.contains(w) || f.len() == 1 {
            return None;
        }
        let mut out = self.clone();
        out.fibers[u].remove(w);
        Some(out)
    }

    /// Graph isomorphism by brute force over relabelings (small systems only).
    pub fn is_isomorphic(&self, other: &RelationSystem) -> bool {
        let n = self.len();
        if n != other.len() || n > 8 {
            return n == other.len() && self.fibers == other.fibers;
        }
        let mut degrees_a: Vec<usize> = self.fibers.iter().map(|f| f.len()).collect();
        let mut degrees_b: Vec<usize> = other.fibers.iter().map(|f| f.len()).collect();
        degrees_a.sort_unstable();
        degrees_b.sort_unstable();
        if degrees_a != degrees_b {
            return false;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let ok = (0..n).all(|x| {
                let mapped: StateSet = self.fibers[x].iter().map(|s| perm[s]).collect();
                other.fibers[perm[x]] == mapped
            });
            if ok {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl fmt::Debug for RelationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RelationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fib) in self.fibers.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let succ: Vec<&str> = fib.iter().map(|s| self.labels[s].as_str()).collect();
            write!(f, "{}→{{{}}}", self.labels[i], succ.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Truth;

    fn ex31() -> RelationSystem {
        RelationSystem::from_successors(&[&[0, 1], &[0]]).unwrap()
    }

    fn full2() -> RelationSystem {
        RelationSystem::from_successors(&[&[0, 1], &[0, 1]]).unwrap()
    }

    fn two_cycle() -> RelationSystem {
        RelationSystem::from_successors(&[&[1], &[0]]).unwrap()
    }

    fn chain() -> RelationSystem {
        RelationSystem::from_successors(&[&[1], &[1]]).unwrap()
    }

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn image_examples() {
        let f = ex31();
        assert_eq!(f.image(set(&[0])).unwrap(), set(&[0, 1]));
        assert_eq!(f.image(set(&[1])).unwrap(), set(&[0]));
        assert_eq!(f.image(StateSet::EMPTY).unwrap(), StateSet::EMPTY);
        assert!(matches!(f.image(set(&[3])), Err(Error::Domain(_))));
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(ex31().iterate(1, 2).unwrap(), set(&[0, 1]));
        assert_eq!(ex31().iterate(1, 0).unwrap(), set(&[1]));
        assert_eq!(full2().iterate(0, 5).unwrap(), set(&[0, 1]));
        assert_eq!(two_cycle().iterate(0, 1_000_001).unwrap(), set(&[1]));
        assert!(ex31().iterate(2, 1).is_err());
    }

    #[test]
    fn invert_examples() {
        let inv = ex31().invert().unwrap();
        assert_eq!(inv.fiber(0), set(&[0, 1]));
        assert_eq!(inv.fiber(1), set(&[0]));
        assert_eq!(full2().invert().unwrap(), full2());
        assert_eq!(
            chain().invert().unwrap_err(),
            Error::NotInvertible { state: "0".into() }
        );
    }

    #[test]
    fn surjectivity() {
        assert!(ex31().is_surjective().is_true());
        assert!(full2().is_surjective().is_true());
        let v = chain().is_surjective();
        assert_eq!(v.certificate, Certificate::MissingPredecessor { state: 0 });
    }

    #[test]
    fn periodic_point_examples() {
        assert_eq!(ex31().periodic_points().states, set(&[0, 1]));
        let selfloops = RelationSystem::from_successors(&[&[0, 1], &[1]]).unwrap();
        assert_eq!(selfloops.periodic_points().states, set(&[0, 1]));
        let p = chain().periodic_points();
        assert_eq!(p.states, set(&[1]));
        assert_eq!(p.cycles[&1], vec![1]);
        assert_eq!(ex31().periodic_points().cycles[&1], vec![1, 0]);
    }

    #[test]
    fn transitivity_examples() {
        assert!(ex31().is_transitive().is_true());
        let id = RelationSystem::from_successors(&[&[0], &[1]]).unwrap();
        assert_eq!(
            id.is_transitive().certificate,
            Certificate::UnreachablePair { from: 0, to: 1 }
        );
        let v = two_cycle().is_transitive();
        assert_eq!(v.certificate, Certificate::PathLengths { lengths: vec![vec![2, 1], vec![1, 2]] });
    }

    #[test]
    fn sensitivity_examples() {
        assert_eq!(
            full2().is_sensitive().certificate,
            Certificate::SensitivityConstant { delta: q(1, 2) }
        );
        let v = two_cycle().is_sensitive();
        assert!(v.is_false());
        match v.certificate {
            Certificate::DeterministicRay { start, ray } => {
                assert_eq!(start, 0);
                assert_eq!(ray.prefix(4), vec![0, 1, 0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(ex31().is_sensitive().is_true());
        assert!(ex31().is_strongly_sensitive().is_false());
    }

    #[test]
    fn all_orbits_periodic_examples() {
        assert!(two_cycle().all_orbits_periodic().is_true());
        assert_eq!(
            ex31().all_orbits_periodic().certificate,
            Certificate::Branching { state: 0, successors: vec![0, 1] }
        );
        let single = RelationSystem::from_successors(&[&[0]]).unwrap();
        assert!(single.all_orbits_periodic().is_true());
        assert_eq!(chain().all_orbits_periodic().certificate, Certificate::Transient { state: 0 });
    }

    #[test]
    fn full_fiber_examples() {
        assert_eq!(full2().has_full_fiber().certificate, Certificate::FullFiber { state: 0 });
        assert_eq!(ex31().has_full_fiber().certificate, Certificate::FullFiber { state: 0 });
        assert!(two_cycle().has_full_fiber().is_false());
    }

    #[test]
    fn devaney_examples() {
        assert!(ex31().is_devaney().is_true());
        assert!(ex31().is_strong_devaney().is_false());
        assert_eq!(two_cycle().is_devaney().value, Truth::False);
    }

    #[test]
    fn minimization_moves() {
        let three = RelationSystem::from_successors(&[&[1], &[2], &[0]]).unwrap();
        let two = three.without_state(2).unwrap();
        assert!(two.is_isomorphic(&two_cycle()));
        assert!(two_cycle().without_state(1).is_some());
        assert!(ex31().without_edge(1, 0).is_none());
        assert_eq!(ex31().without_edge(0, 1).unwrap().fiber(0), set(&[0]));
    }

    #[test]
    fn isomorphism() {
        let a = RelationSystem::from_successors(&[&[0, 1], &[1]]).unwrap();
        let b = RelationSystem::from_successors(&[&[0], &[0, 1]]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&ex31()));
    }
}
