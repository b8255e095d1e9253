//! The inverse limit of a finite relation system as a one-sided vertex shift.
//!
//! A point `(x_0, x_1, …)` of the limit satisfies `x_i ∈ F(x_{i+1})`. Reading
//! coordinates left to right gives walks in the step graph `v → u` iff
//! `v ∈ F(u)`, i.e. the transpose of the relation. Only states with an
//! infinite walk ahead of them (the core) ever occur in a point.

pub mod oracle;

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::EventuallyPeriodicSeq;
use crate::rational::q;
use crate::relation::{RelationSystem, StateSet};
use crate::verdict::{Certificate, Verdict};

/// The vertex shift induced by a relation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexShift {
    base: RelationSystem,
    core: StateSet,
    // next[v]: admissible next coordinates after v, within the core
    next: Vec<StateSet>,
}

/// A finite word anchored at coordinate 0 that prefixes at least one point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CylinderWord(Vec<usize>);

impl CylinderWord {
    pub fn new(shift: &VertexShift, entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::argument("cylinder words are nonempty"));
        }
        if let Some(&bad) = entries.iter().find(|&&s| s >= shift.base.len()) {
            return Err(Error::domain(format!("unknown state index {bad}")));
        }
        for (i, w) in entries.windows(2).enumerate() {
            if !shift.base.fiber(w[1]).contains(w[0]) {
                return Err(Error::argument(format!("step {i} of {entries:?} violates x_i ∈ F(x_(i+1))")));
            }
        }
        let last = *entries.last().expect("nonempty");
        if !shift.core.contains(last) {
            return Err(Error::argument(format!("word {entries:?} does not extend to a point")));
        }
        Ok(CylinderWord(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// One point of the cylinder, following least continuations.
    pub fn some_point(&self, shift: &VertexShift) -> EventuallyPeriodicSeq<usize> {
        let mut walk = self.0.clone();
        let start = walk.len() - 1;
        loop {
            let last = *walk.last().expect("nonempty");
            let nxt = shift.next[last].first().expect("core states continue");
            if let Some(pos) = walk[start..].iter().position(|&s| s == nxt) {
                let cycle = walk.split_off(start + pos);
                return EventuallyPeriodicSeq::new(walk, cycle).expect("nonempty cycle");
            }
            walk.push(nxt);
        }
    }
}

/// Greatest set of states each of which has a predecessor inside the set.
fn compute_core(f: &RelationSystem) -> StateSet {
    let mut core = f.states();
    loop {
        let mut pruned = core;
        for v in core.iter() {
            // v needs some u in the set with v ∈ F(u)
            if !core.iter().any(|u| f.fiber(u).contains(v)) {
                pruned.remove(v);
            }
        }
        if pruned == core {
            return core;
        }
        core = pruned;
    }
}

impl VertexShift {
    /// Build the limit of `f`.
    pub fn build(f: &RelationSystem) -> Self {
        let core = compute_core(f);
        let mut next = vec![StateSet::EMPTY; f.len()];
        for v in core.iter() {
            next[v] = core.iter().filter(|&u| f.fiber(u).contains(v)).collect();
        }
        VertexShift {
            base: f.clone(),
            core,
            next,
        }
    }

    pub fn base(&self) -> &RelationSystem {
        &self.base
    }

    pub fn core(&self) -> StateSet {
        self.core
    }

    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }

    /// Admissible coordinates following `v`.
    pub fn continuations(&self, v: usize) -> StateSet {
        self.next.get(v).copied().unwrap_or_default()
    }

    /// Allowed consecutive pairs `(x_i, x_(i+1))` between core states.
    pub fn allowed_steps(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.core.iter() {
            for b in self.next[a].iter() {
                out.push((a, b));
            }
        }
        out
    }

    pub(crate) fn step_count(&self) -> usize {
        self.core.iter().map(|v| self.next[v].len()).sum()
    }

    /// States reachable from `v` in zero or more steps.
    pub(crate) fn reach_star(&self, v: usize) -> StateSet {
        let mut seen = StateSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut grown = StateSet::EMPTY;
            for s in frontier.iter() {
                grown = grown.union(self.next[s]);
            }
            frontier = grown.difference(seen);
            seen = seen.union(grown);
        }
        seen
    }

    /// States reachable from `v` in one or more steps.
    pub(crate) fn reach_plus(&self, v: usize) -> StateSet {
        self.next[v].iter().fold(StateSet::EMPTY, |acc, u| acc.union(self.reach_star(u)))
    }

    /// Shortest walk `from, …, to` with at least `min_steps` steps.
    pub(crate) fn shortest_walk(&self, from: usize, to: usize, min_steps: usize) -> Option<Vec<usize>> {
        if min_steps == 0 && from == to {
            return Some(vec![from]);
        }
        let n = self.base.len();
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![0usize; n];
        let mut seen = StateSet::EMPTY;
        let mut queue = VecDeque::new();
        for u in self.next[from].iter() {
            seen.insert(u);
            parent[u] = from;
            dist[u] = 1;
            queue.push_back(u);
        }
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                for _ in 0..dist[to] {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for u in self.next[v].iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    parent[u] = v;
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        None
    }

    /// All extendable words of length `1..=max_len`, by length then lexicographically.
    pub fn enumerate_words(&self, max_len: usize) -> Result<Vec<CylinderWord>> {
        if max_len < 1 {
            return Err(Error::argument("word length bound must be at least 1"));
        }
        let mut out = Vec::new();
        let mut layer: Vec<Vec<usize>> = self.core.iter().map(|v| vec![v]).collect();
        for len in 1..=max_len {
            out.extend(layer.iter().cloned().map(CylinderWord));
            if len == max_len {
                break;
            }
            let mut grown = Vec::new();
            for w in &layer {
                let last = *w.last().expect("nonempty");
                for u in self.next[last].iter() {
                    let mut e = w.clone();
                    e.push(u);
                    grown.push(e);
                }
            }
            layer = grown;
        }
        Ok(out)
    }

    /// Every σ-periodic point of least period at most `p`, by period then lexicographically.
    pub fn periodic_points(&self, p: usize) -> Vec<EventuallyPeriodicSeq<usize>> {
        let mut out = Vec::new();
        for m in 1..=p {
            for w in self.enumerate_words(m).unwrap_or_default() {
                let e = w.entries();
                if e.len() != m || !self.next[e[m - 1]].contains(e[0]) {
                    continue;
                }
                let seq = EventuallyPeriodicSeq::periodic(e.to_vec()).expect("nonempty");
                if seq.cycle().len() == m {
                    out.push(seq);
                }
            }
        }
        out
    }

    /// The least word that prefixes no periodic point, if any.
    ///
    /// A non-closable word always contains a non-closable word of length at
    /// most two, so only those are inspected.
    fn least_unclosable_word(&self) -> Option<Vec<usize>> {
        for v in self.core.iter() {
            if !self.reach_plus(v).contains(v) {
                return Some(vec![v]);
            }
        }
        for a in self.core.iter() {
            for b in self.next[a].iter() {
                if !self.reach_star(b).contains(a) {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }

    /// Density of σ-periodic points: every step lies inside a strongly
    /// connected component of the step graph.
    pub fn periodic_dense(&self) -> Verdict {
        match self.least_unclosable_word() {
            Some(word) => Verdict::no(Certificate::Word { word }),
            None => Verdict::yes(Certificate::Exhaustive {
                checked: self.step_count(),
            }),
        }
    }

    /// Transitivity of σ: the step graph on the core is strongly connected.
    pub fn transitive(&self) -> Verdict {
        for u in self.core.iter() {
            let reach = self.reach_plus(u);
            if let Some(v) = self.core.difference(reach).first() {
                return Verdict::no(Certificate::WordPair {
                    from: vec![u],
                    to: vec![v],
                });
            }
        }
        Verdict::yes(Certificate::Exhaustive {
            checked: self.core.len(),
        })
    }

    /// The forced point starting at `v`, if every continuation from `v` on is unique.
    pub fn deterministic_ray(&self, v: usize) -> Option<EventuallyPeriodicSeq<usize>> {
        let mut walk = vec![v];
        let mut cur = v;
        loop {
            let c = self.next[cur];
            if c.len() != 1 {
                return None;
            }
            let nxt = c.first().expect("singleton");
            if let Some(pos) = walk.iter().position(|&s| s == nxt) {
                let cycle = walk.split_off(pos);
                return Some(EventuallyPeriodicSeq::new(walk, cycle).expect("nonempty"));
            }
            walk.push(nxt);
            cur = nxt;
        }
    }

    /// Sensitivity of σ: no core state starts a deterministic ray.
    pub fn sensitive(&self) -> Verdict {
        for v in self.core.iter() {
            if let Some(ray) = self.deterministic_ray(v) {
                return Verdict::no(Certificate::DeterministicRay { start: v, ray });
            }
        }
        if self.core.is_empty() {
            return Verdict::no(Certificate::Note {
                text: "empty shift".into(),
            });
        }
        Verdict::yes(Certificate::SensitivityConstant { delta: q(1, 2) })
    }

    pub fn devaney(&self) -> Verdict {
        Verdict::all(vec![
            ("transitive", self.transitive()),
            ("periodic-dense", self.periodic_dense()),
            ("sensitive", self.sensitive()),
        ])
    }
}

/// Shorthand for [`VertexShift::build`].
pub fn build_limit(f: &RelationSystem) -> VertexShift {
    VertexShift::build(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Truth;

    fn sys(s: &[&[usize]]) -> RelationSystem {
        RelationSystem::from_successors(s).unwrap()
    }

    fn ex31() -> VertexShift {
        build_limit(&sys(&[&[0, 1], &[0]]))
    }

    fn full() -> VertexShift {
        build_limit(&sys(&[&[0, 1], &[0, 1]]))
    }

    // a → {a, b}, b → {b}
    fn loops() -> VertexShift {
        build_limit(&sys(&[&[0, 1], &[1]]))
    }

    fn words(s: &VertexShift, l: usize) -> Vec<Vec<usize>> {
        s.enumerate_words(l).unwrap().into_iter().map(|w| w.0).collect()
    }

    #[test]
    fn core_and_steps() {
        let s = ex31();
        assert_eq!(s.core(), StateSet::full(2));
        assert_eq!(s.allowed_steps(), vec![(0, 0), (0, 1), (1, 0)]);
        let chain = build_limit(&sys(&[&[1], &[1]]));
        assert_eq!(chain.core(), StateSet::singleton(1));
        assert_eq!(full().allowed_steps().len(), 4);
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(words(&ex31(), 2), vec![vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(words(&full(), 2).len(), 6);
        assert!(ex31().enumerate_words(0).is_err());
        assert!(CylinderWord::new(&ex31(), vec![1, 1]).is_err());
        let chain = build_limit(&sys(&[&[1], &[1]]));
        assert!(CylinderWord::new(&chain, vec![0]).is_err());
    }

    #[test]
    fn periodic_point_listing() {
        let got: Vec<String> = ex31().periodic_points(2).iter().map(|p| format!("{p:?}")).collect();
        assert_eq!(got, vec!["(0)^∞", "(0, 1)^∞", "(1, 0)^∞"]);
        assert_eq!(loops().periodic_points(2).len(), 2);
        assert_eq!(full().periodic_points(1).len(), 2);
    }

    #[test]
    fn graph_criteria() {
        assert!(full().periodic_dense().is_true());
        assert_eq!(loops().periodic_dense().certificate, Certificate::Word { word: vec![1, 0] });
        assert!(ex31().periodic_dense().is_true());
        assert!(full().transitive().is_true());
        assert!(ex31().transitive().is_true());
        let two_fixed = build_limit(&sys(&[&[0], &[1]]));
        assert_eq!(
            two_fixed.transitive().certificate,
            Certificate::WordPair { from: vec![0], to: vec![1] }
        );
        assert!(full().sensitive().is_true());
        assert!(build_limit(&sys(&[&[0]])).sensitive().is_false());
        assert!(ex31().sensitive().is_true());
        assert!(full().devaney().is_true());
        assert_eq!(loops().devaney().value, Truth::False);
        assert!(build_limit(&sys(&[&[1], &[0]])).devaney().is_false());
    }

    #[test]
    fn some_point_prefix() {
        let s = ex31();
        let w = CylinderWord::new(&s, vec![1, 0, 1]).unwrap();
        assert_eq!(w.some_point(&s).prefix(3), vec![1, 0, 1]);
    }

    #[test]
    fn walks() {
        let s = ex31();
        assert_eq!(s.shortest_walk(0, 0, 1), Some(vec![0, 0]));
        assert_eq!(s.shortest_walk(1, 1, 1), Some(vec![1, 0, 1]));
        assert_eq!(s.shortest_walk(1, 1, 0), Some(vec![1]));
    }
}
