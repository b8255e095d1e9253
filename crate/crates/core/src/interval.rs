//! Finite unions of intervals with exact rational endpoints.
//!
//! Each endpoint carries an open/closed flag so the same type represents
//! open basis sets, closed fibers and images, and their intersections.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::rational::Rational;

/// A nonempty interval `lo..hi` with per-endpoint closedness.
///
/// Invariant: `lo < hi`, or `lo == hi` with both ends closed (a point).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    /// Returns `None` when the described set is empty.
    pub fn new(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool) -> Option<Self> {
        match lo.cmp(&hi) {
            Ordering::Less => Some(Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }),
            Ordering::Equal if lo_closed && hi_closed => Some(Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }),
            _ => None,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Option<Self> {
        Self::new(lo, true, hi, true)
    }

    pub fn open(lo: Rational, hi: Rational) -> Option<Self> {
        Self::new(lo, false, hi, false)
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, lo_closed, hi, hi_closed)
    }

    pub fn closure(&self) -> Interval {
        Interval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// Distance from `x` to the closure of the interval.
    pub fn distance_to(&self, x: &Rational) -> Rational {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            Rational::zero()
        }
    }

    /// Image under `y = slope * x + intercept`.
    pub fn affine_image(&self, slope: &Rational, intercept: &Rational) -> Interval {
        let map = |v: &Rational| slope * v + intercept;
        if slope.is_zero() {
            Interval::point(intercept.clone())
        } else if slope.is_positive() {
            Interval {
                lo: map(&self.lo),
                hi: map(&self.hi),
                lo_closed: self.lo_closed,
                hi_closed: self.hi_closed,
            }
        } else {
            Interval {
                lo: map(&self.hi),
                hi: map(&self.lo),
                lo_closed: self.hi_closed,
                hi_closed: self.lo_closed,
            }
        }
    }

    /// Some element of the interval: the left endpoint when closed, else the midpoint.
    pub fn representative(&self) -> Rational {
        if self.lo_closed {
            self.lo.clone()
        } else if self.hi_closed && self.lo == self.hi {
            self.hi.clone()
        } else {
            self.lo.midpoint(&self.hi)
        }
    }

    fn start_key(&self) -> (&Rational, bool) {
        (&self.lo, !self.lo_closed)
    }

    /// `self` sorted no later than `next`; true when their union is one interval.
    fn joins(&self, next: &Interval) -> bool {
        match self.hi.cmp(&next.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed || next.lo_closed,
            Ordering::Less => false,
        }
    }

    fn absorb(&mut self, next: Interval) {
        match self.hi.cmp(&next.hi) {
            Ordering::Less => {
                self.hi = next.hi;
                self.hi_closed = next.hi_closed;
            }
            Ordering::Equal => self.hi_closed |= next.hi_closed,
            Ordering::Greater => {}
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite union of pairwise disjoint, maximal intervals sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn unit() -> Self {
        Self::closed(Rational::zero(), Rational::one())
    }

    pub fn point(x: Rational) -> Self {
        IntervalUnion {
            parts: vec![Interval::point(x)],
        }
    }

    /// `[lo, hi]`, empty when `lo > hi`.
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::from_parts(Interval::closed(lo, hi))
    }

    /// `(lo, hi)`, empty when `lo >= hi`.
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Self::from_parts(Interval::open(lo, hi))
    }

    pub fn points<I: IntoIterator<Item = Rational>>(xs: I) -> Self {
        Self::from_parts(xs.into_iter().map(Interval::point))
    }

    /// Normalizes an arbitrary collection of intervals.
    pub fn from_parts<I: IntoIterator<Item = Interval>>(parts: I) -> Self {
        let mut parts: Vec<Interval> = parts.into_iter().collect();
        parts.sort_by(|a, b| a.start_key().cmp(&b.start_key()));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            match merged.last_mut() {
                Some(last) if last.joins(&p) => last.absorb(p),
                _ => merged.push(p),
            }
        }
        IntervalUnion { parts: merged }
    }

    pub fn components(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        Self::from_parts(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersection(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        Self::from_parts(out)
    }

    pub fn intersects(&self, other: &IntervalUnion) -> bool {
        self.parts
            .iter()
            .any(|a| other.parts.iter().any(|b| a.intersect(b).is_some()))
    }

    pub fn is_subset(&self, other: &IntervalUnion) -> bool {
        &self.intersection(other) == self
    }

    pub fn closure(&self) -> IntervalUnion {
        Self::from_parts(self.parts.iter().map(Interval::closure))
    }

    /// Complement relative to `[0, 1]`.
    pub fn complement_in_unit(&self) -> IntervalUnion {
        let mut out = Vec::new();
        let mut cursor = Rational::zero();
        let mut cursor_closed = true;
        for p in &self.parts {
            if let Some(gap) = Interval::new(cursor.clone(), cursor_closed, p.lo.clone(), !p.lo_closed) {
                out.push(gap);
            }
            cursor = p.hi.clone();
            cursor_closed = !p.hi_closed;
        }
        if let Some(gap) = Interval::new(cursor, cursor_closed, Rational::one(), true) {
            out.push(gap);
        }
        Self::from_parts(out).intersection(&Self::unit())
    }

    pub fn inf(&self) -> Option<&Rational> {
        self.parts.first().map(|p| &p.lo)
    }

    pub fn sup(&self) -> Option<&Rational> {
        self.parts.last().map(|p| &p.hi)
    }

    pub fn diameter(&self) -> Option<Rational> {
        Some(self.sup()? - self.inf()?)
    }

    pub fn is_unit(&self) -> bool {
        self == &Self::unit()
    }

    /// True when the set is finite (all components are points).
    pub fn is_finite(&self) -> bool {
        self.parts.iter().all(Interval::is_point)
    }

    /// The isolated points, in ascending order.
    pub fn point_values(&self) -> Vec<Rational> {
        self.parts
            .iter()
            .filter(|p| p.is_point())
            .map(|p| p.lo.clone())
            .collect()
    }

    pub fn representative(&self) -> Option<Rational> {
        self.parts.first().map(Interval::representative)
    }

    /// A finite sample of elements: isolated points, and for each proper
    /// interval its closed endpoints and midpoint.
    pub fn sample(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for p in &self.parts {
            if p.is_point() {
                out.push(p.lo.clone());
                continue;
            }
            if p.lo_closed {
                out.push(p.lo.clone());
            }
            out.push(p.lo.midpoint(&p.hi));
            if p.hi_closed {
                out.push(p.hi.clone());
            }
        }
        out
    }

    /// `inf { |x - a| : a in self }`; `None` for the empty set.
    pub fn distance_to_point(&self, x: &Rational) -> Option<Rational> {
        self.parts.iter().map(|p| p.distance_to(x)).min()
    }

    /// `sup { d(a, other) : a in self }`, the directed Hausdorff distance.
    pub fn directed_hausdorff(&self, other: &IntervalUnion) -> Option<Rational> {
        self.farthest_candidates(other)?
            .into_iter()
            .map(|(_, d)| d)
            .max()
    }

    /// Hausdorff distance; `None` when either set is empty.
    pub fn hausdorff(&self, other: &IntervalUnion) -> Option<Rational> {
        let ab = self.directed_hausdorff(other)?;
        let ba = other.directed_hausdorff(self)?;
        Some(ab.max(ba))
    }

    /// Some `z` in `self` with `d(z, other) > bound`, together with that distance.
    pub fn point_farther_than(&self, other: &IntervalUnion, bound: &Rational) -> Option<(Rational, Rational)> {
        let mut best: Option<(Rational, Rational)> = None;
        for (z, d) in self.farthest_candidates(other)? {
            if &d <= bound {
                continue;
            }
            let z = if self.contains(&z) {
                z
            } else {
                // Supremum sits at an open endpoint; step inside by less than the slack.
                let comp = self.parts.iter().find(|p| p.lo == z || p.hi == z)?;
                let slack = (&d - bound) / Rational::from_int(2);
                let half = (&comp.hi - &comp.lo) / Rational::from_int(2);
                let step = slack.min(half);
                if comp.lo == z {
                    &z + &step
                } else {
                    &z - &step
                }
            };
            let dist = other.distance_to_point(&z)?;
            if &dist > bound && best.as_ref().is_none_or(|(_, bd)| &dist > bd) {
                best = Some((z, dist));
            }
        }
        best
    }

    // Local maxima of d(., other) over the closure of self: endpoints of self
    // and midpoints of the gaps of other that fall inside self.
    fn farthest_candidates(&self, other: &IntervalUnion) -> Option<Vec<(Rational, Rational)>> {
        if self.is_empty() || other.is_empty() {
            return None;
        }
        let closure = self.closure();
        let mut cands: Vec<Rational> = Vec::new();
        for p in &self.parts {
            cands.push(p.lo.clone());
            cands.push(p.hi.clone());
        }
        for w in other.parts.windows(2) {
            let mid = w[0].hi.midpoint(&w[1].lo);
            if closure.contains(&mid) {
                cands.push(mid);
            }
        }
        Some(
            cands
                .into_iter()
                .map(|z| {
                    let d = other.distance_to_point(&z).expect("nonempty");
                    (z, d)
                })
                .collect(),
        )
    }

    /// Image of every component under an affine map.
    pub fn affine_image(&self, slope: &Rational, intercept: &Rational) -> IntervalUnion {
        Self::from_parts(self.parts.iter().map(|p| p.affine_image(slope, intercept)))
    }

    /// A point of the set that has no neighborhood (relative to `[0, 1]`)
    /// contained in the set, if any. `None` means the set is relatively open.
    pub fn non_interior_point(&self) -> Option<Rational> {
        let zero = Rational::zero();
        let one = Rational::one();
        for p in &self.parts {
            if p.lo_closed && p.lo != zero {
                return Some(p.lo.clone());
            }
            if p.hi_closed && p.hi != one {
                return Some(p.hi.clone());
            }
            if p.is_point() {
                // A point that is 0 or 1 is still not open unless the unit interval is a point.
                return Some(p.lo.clone());
            }
        }
        None
    }

    pub fn is_relatively_open(&self) -> bool {
        self.non_interior_point().is_none()
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IntervalUnion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn closed(a: Rational, b: Rational) -> IntervalUnion {
        IntervalUnion::closed(a, b)
    }

    #[test]
    fn touching_components_merge() {
        let u = IntervalUnion::from_parts([
            Interval::new(q(0, 1), true, q(1, 2), false).unwrap(),
            Interval::closed(q(1, 2), q(1, 1)).unwrap(),
        ]);
        assert!(u.is_unit());
        let v = IntervalUnion::open(q(0, 1), q(1, 2)).union(&IntervalUnion::open(q(1, 2), q(1, 1)));
        assert_eq!(v.components().len(), 2);
    }

    #[test]
    fn complement_round_trip() {
        let u = closed(q(1, 4), q(1, 2)).union(&IntervalUnion::point(q(3, 4)));
        let c = u.complement_in_unit();
        assert_eq!(c.to_string(), "[0, 1/4) ∪ (1/2, 3/4) ∪ (3/4, 1]");
        assert_eq!(c.complement_in_unit(), u);
        assert!(IntervalUnion::unit().complement_in_unit().is_empty());
    }

    #[test]
    fn hausdorff_examples() {
        let a = closed(q(0, 1), q(1, 2));
        let b = IntervalUnion::unit();
        assert_eq!(a.hausdorff(&b), Some(q(1, 2)));
        let c = closed(q(1, 4), q(3, 4));
        assert_eq!(c.hausdorff(&c), Some(Rational::zero()));
        // gap midpoint of the target is the farthest point
        let pts = IntervalUnion::points([q(0, 1), q(1, 1)]);
        assert_eq!(b.directed_hausdorff(&pts), Some(q(1, 2)));
        assert_eq!(IntervalUnion::empty().hausdorff(&b), None);
    }

    #[test]
    fn farther_point_at_open_endpoint() {
        let a = IntervalUnion::open(q(1, 2), q(1, 1));
        let b = IntervalUnion::point(q(0, 1));
        let (z, d) = a.point_farther_than(&b, &q(3, 4)).unwrap();
        assert!(a.contains(&z));
        assert!(d > q(3, 4));
        assert!(a.point_farther_than(&b, &q(1, 1)).is_none());
    }

    #[test]
    fn openness() {
        assert!(IntervalUnion::open(q(0, 1), q(1, 2)).is_relatively_open());
        assert!(IntervalUnion::from_parts(Interval::new(q(0, 1), true, q(1, 2), false)).is_relatively_open());
        assert_eq!(closed(q(1, 4), q(1, 2)).non_interior_point(), Some(q(1, 4)));
        assert!(IntervalUnion::unit().is_relatively_open());
        assert_eq!(IntervalUnion::point(q(0, 1)).non_interior_point(), Some(q(0, 1)));
    }

    #[test]
    fn affine_flip_swaps_flags() {
        let iv = Interval::new(q(0, 1), true, q(1, 4), false).unwrap();
        let img = iv.affine_image(&q(-2, 1), &q(1, 1));
        assert_eq!(img.to_string(), "(1/2, 1]");
    }
}
