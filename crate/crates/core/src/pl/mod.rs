//! Piecewise-linear multivalued maps of `[0, 1]`.
//!
//! A map is stored as its graph: a finite union of closed pieces in the unit
//! square, each either an affine segment over an x-interval or an
//! axis-aligned rectangle (possibly degenerate). Closed pieces make the graph
//! closed, which is upper semi-continuity for a compact codomain.

pub mod analysis;
pub mod ratio;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalUnion};
use crate::rational::Rational;

/// One closed piece of a graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GraphPiece {
    /// `y = slope·x + intercept` for `x ∈ [x_lo, x_hi]`, `x_lo < x_hi`, `slope ≠ 0`.
    Segment {
        x_lo: Rational,
        x_hi: Rational,
        slope: Rational,
        intercept: Rational,
    },
    /// `[x_lo, x_hi] × [y_lo, y_hi]`.
    Rect {
        x_lo: Rational,
        x_hi: Rational,
        y_lo: Rational,
        y_hi: Rational,
    },
}

fn in_unit(x: &Rational) -> bool {
    x.in_unit()
}

impl GraphPiece {
    /// An affine piece; a zero slope yields a horizontal degenerate rectangle.
    pub fn segment(x_lo: Rational, x_hi: Rational, slope: Rational, intercept: Rational) -> Result<Self> {
        if x_lo >= x_hi {
            return Err(Error::argument(format!("segment x-range [{x_lo}, {x_hi}] is degenerate")));
        }
        if slope.is_zero() {
            return Self::rect(x_lo, x_hi, intercept.clone(), intercept);
        }
        let piece = GraphPiece::Segment {
            x_lo,
            x_hi,
            slope,
            intercept,
        };
        piece.check_in_square()?;
        Ok(piece)
    }

    pub fn rect(x_lo: Rational, x_hi: Rational, y_lo: Rational, y_hi: Rational) -> Result<Self> {
        if x_lo > x_hi || y_lo > y_hi {
            return Err(Error::argument("rectangle bounds are reversed"));
        }
        let piece = GraphPiece::Rect { x_lo, x_hi, y_lo, y_hi };
        piece.check_in_square()?;
        Ok(piece)
    }

    fn check_in_square(&self) -> Result<()> {
        let (x_lo, x_hi) = self.x_range();
        let (y_lo, y_hi) = self.y_range();
        if [x_lo, x_hi, &y_lo, &y_hi].iter().all(|v| in_unit(v)) {
            Ok(())
        } else {
            Err(Error::domain(format!("piece {self:?} leaves the unit square")))
        }
    }

    pub fn x_range(&self) -> (&Rational, &Rational) {
        match self {
            GraphPiece::Segment { x_lo, x_hi, .. } | GraphPiece::Rect { x_lo, x_hi, .. } => (x_lo, x_hi),
        }
    }

    pub fn x_interval(&self) -> Interval {
        let (lo, hi) = self.x_range();
        Interval::closed(lo.clone(), hi.clone()).expect("ordered")
    }

    pub fn y_range(&self) -> (Rational, Rational) {
        match self {
            GraphPiece::Segment {
                x_lo,
                x_hi,
                slope,
                intercept,
            } => {
                let a = slope * x_lo + intercept;
                let b = slope * x_hi + intercept;
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            GraphPiece::Rect { y_lo, y_hi, .. } => (y_lo.clone(), y_hi.clone()),
        }
    }

    pub fn y_interval(&self) -> Interval {
        let (lo, hi) = self.y_range();
        Interval::closed(lo, hi).expect("ordered")
    }

    pub fn covers_x(&self, x: &Rational) -> bool {
        let (lo, hi) = self.x_range();
        lo <= x && x <= hi
    }

    /// The piece's contribution to `F(x)`.
    pub fn fiber_at(&self, x: &Rational) -> Option<Interval> {
        if !self.covers_x(x) {
            return None;
        }
        Some(match self {
            GraphPiece::Segment { slope, intercept, .. } => Interval::point(slope * x + intercept),
            GraphPiece::Rect { .. } => self.y_interval(),
        })
    }

    /// The fiber as a function on the open left/right neighborhood side,
    /// evaluated in the limit at `x`. `None` if the piece does not extend to that side.
    pub fn one_sided_fiber(&self, x: &Rational, left: bool) -> Option<Interval> {
        let (lo, hi) = self.x_range();
        let reaches = if left { lo < x && x <= hi } else { lo <= x && x < hi };
        if reaches {
            self.fiber_at(x)
        } else {
            None
        }
    }

    /// Image of `I ∩ x-range`.
    pub fn image_on(&self, i: &Interval) -> Option<Interval> {
        let part = i.intersect(&self.x_interval())?;
        Some(match self {
            GraphPiece::Segment { slope, intercept, .. } => part.affine_image(slope, intercept),
            GraphPiece::Rect { .. } => self.y_interval(),
        })
    }

    /// `{x in the x-range : fiber ∩ V ≠ ∅}`.
    pub fn preimage(&self, v: &IntervalUnion) -> IntervalUnion {
        match self {
            GraphPiece::Segment { slope, intercept, .. } => {
                let inv_slope = Rational::one() / slope;
                let inv_icpt = -(intercept / slope);
                let pulled = v.affine_image(&inv_slope, &inv_icpt);
                pulled.intersection(&IntervalUnion::from_parts([self.x_interval()]))
            }
            GraphPiece::Rect { .. } => {
                if v.intersects(&IntervalUnion::from_parts([self.y_interval()])) {
                    IntervalUnion::from_parts([self.x_interval()])
                } else {
                    IntervalUnion::empty()
                }
            }
        }
    }

    /// Reflection across the diagonal.
    pub fn transpose(&self) -> GraphPiece {
        match self {
            GraphPiece::Segment {
                x_lo,
                x_hi,
                slope,
                intercept,
            } => {
                let (y_lo, y_hi) = self.y_range();
                let _ = (x_lo, x_hi);
                GraphPiece::Segment {
                    x_lo: y_lo,
                    x_hi: y_hi,
                    slope: Rational::one() / slope,
                    intercept: -(intercept / slope),
                }
            }
            GraphPiece::Rect { x_lo, x_hi, y_lo, y_hi } => GraphPiece::Rect {
                x_lo: y_lo.clone(),
                x_hi: y_hi.clone(),
                y_lo: x_lo.clone(),
                y_hi: x_hi.clone(),
            },
        }
    }

    fn is_point(&self) -> bool {
        matches!(self, GraphPiece::Rect { x_lo, x_hi, y_lo, y_hi } if x_lo == x_hi && y_lo == y_hi)
    }

    /// Whether `self ⊆ other` as point sets.
    fn within(&self, other: &GraphPiece) -> bool {
        let (a_lo, a_hi) = self.x_range();
        let (b_lo, b_hi) = other.x_range();
        if a_lo < b_lo || a_hi > b_hi {
            return false;
        }
        match (self, other) {
            (_, GraphPiece::Rect { y_lo, y_hi, .. }) => {
                let (lo, hi) = self.y_range();
                y_lo <= &lo && &hi <= y_hi
            }
            (GraphPiece::Segment { slope: s1, intercept: i1, .. }, GraphPiece::Segment { slope: s2, intercept: i2, .. }) => {
                s1 == s2 && i1 == i2
            }
            (GraphPiece::Rect { x_lo, y_lo, .. }, GraphPiece::Segment { .. }) => {
                self.is_point() && other.fiber_at(x_lo).is_some_and(|f| f.contains(y_lo))
            }
        }
    }

    fn merge(&self, other: &GraphPiece) -> Option<GraphPiece> {
        if self.within(other) {
            return Some(other.clone());
        }
        if other.within(self) {
            return Some(self.clone());
        }
        match (self, other) {
            (
                GraphPiece::Segment {
                    x_lo: a_lo,
                    x_hi: a_hi,
                    slope: s1,
                    intercept: i1,
                },
                GraphPiece::Segment {
                    x_lo: b_lo,
                    x_hi: b_hi,
                    slope: s2,
                    intercept: i2,
                },
            ) if s1 == s2 && i1 == i2 && a_lo <= b_hi && b_lo <= a_hi => Some(GraphPiece::Segment {
                x_lo: a_lo.min_of(b_lo).clone(),
                x_hi: a_hi.max_of(b_hi).clone(),
                slope: s1.clone(),
                intercept: i1.clone(),
            }),
            (
                GraphPiece::Rect {
                    x_lo: ax0,
                    x_hi: ax1,
                    y_lo: ay0,
                    y_hi: ay1,
                },
                GraphPiece::Rect {
                    x_lo: bx0,
                    x_hi: bx1,
                    y_lo: by0,
                    y_hi: by1,
                },
            ) => {
                if ax0 == bx0 && ax1 == bx1 && ay0 <= by1 && by0 <= ay1 {
                    Some(GraphPiece::Rect {
                        x_lo: ax0.clone(),
                        x_hi: ax1.clone(),
                        y_lo: ay0.min_of(by0).clone(),
                        y_hi: ay1.max_of(by1).clone(),
                    })
                } else if ay0 == by0 && ay1 == by1 && ax0 <= bx1 && bx0 <= ax1 {
                    Some(GraphPiece::Rect {
                        x_lo: ax0.min_of(bx0).clone(),
                        x_hi: ax1.max_of(bx1).clone(),
                        y_lo: ay0.clone(),
                        y_hi: ay1.clone(),
                    })
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl fmt::Debug for GraphPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphPiece::Segment {
                x_lo,
                x_hi,
                slope,
                intercept,
            } => write!(f, "y={slope}x+{intercept} on [{x_lo}, {x_hi}]"),
            GraphPiece::Rect { x_lo, x_hi, y_lo, y_hi } => write!(f, "[{x_lo}, {x_hi}]×[{y_lo}, {y_hi}]"),
        }
    }
}

/// A multivalued map of `[0, 1]` with nonempty fibers, given by its closed graph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PLMultiMap {
    pieces: Vec<GraphPiece>,
}

fn canonicalize(mut pieces: Vec<GraphPiece>) -> Vec<GraphPiece> {
    pieces.sort();
    pieces.dedup();
    'scan: loop {
        for i in 0..pieces.len() {
            for j in 0..pieces.len() {
                if i == j {
                    continue;
                }
                if let Some(m) = pieces[i].merge(&pieces[j]) {
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    pieces.swap_remove(hi);
                    pieces.swap_remove(lo);
                    pieces.push(m);
                    continue 'scan;
                }
            }
        }
        break;
    }
    pieces.sort();
    pieces
}

fn x_coverage(pieces: &[GraphPiece]) -> IntervalUnion {
    IntervalUnion::from_parts(pieces.iter().map(GraphPiece::x_interval))
}

fn y_coverage(pieces: &[GraphPiece]) -> IntervalUnion {
    IntervalUnion::from_parts(pieces.iter().map(GraphPiece::y_interval))
}

impl PLMultiMap {
    /// Validates that the pieces cover `[0, 1]` in x and canonicalizes them.
    pub fn new(pieces: Vec<GraphPiece>) -> Result<Self> {
        for p in &pieces {
            p.check_in_square()?;
        }
        let cover = x_coverage(&pieces);
        if !cover.is_unit() {
            return Err(Error::argument(format!(
                "pieces leave x-values {} without a fiber",
                cover.complement_in_unit()
            )));
        }
        Ok(PLMultiMap {
            pieces: canonicalize(pieces),
        })
    }

    pub fn identity() -> Self {
        PLMultiMap {
            pieces: vec![GraphPiece::Segment {
                x_lo: Rational::zero(),
                x_hi: Rational::one(),
                slope: Rational::one(),
                intercept: Rational::zero(),
            }],
        }
    }

    pub fn pieces(&self) -> &[GraphPiece] {
        &self.pieces
    }

    /// All x-coordinates where some piece starts or ends, plus `0` and `1`.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(), Rational::one()];
        for p in &self.pieces {
            let (lo, hi) = p.x_range();
            out.push(lo.clone());
            out.push(hi.clone());
        }
        out.sort();
        out.dedup();
        out
    }

    /// `F(x)`.
    pub fn evaluate(&self, x: &Rational) -> Result<IntervalUnion> {
        if !x.in_unit() {
            return Err(Error::domain(format!("{x} is outside [0, 1]")));
        }
        Ok(IntervalUnion::from_parts(self.pieces.iter().filter_map(|p| p.fiber_at(x))))
    }

    /// `F(U) = ⋃_{x∈U} F(x)`.
    pub fn image_of(&self, u: &IntervalUnion) -> IntervalUnion {
        let mut parts = Vec::new();
        for p in &self.pieces {
            for c in u.components() {
                if let Some(img) = p.image_on(c) {
                    parts.push(img);
                }
            }
        }
        IntervalUnion::from_parts(parts)
    }

    /// `{x : F(x) ∩ V ≠ ∅}`.
    pub fn preimage_of(&self, v: &IntervalUnion) -> IntervalUnion {
        self.pieces
            .iter()
            .fold(IntervalUnion::empty(), |acc, p| acc.union(&p.preimage(v)))
    }

    /// `F^n(x)` by repeated images, `n ≥ 0`.
    pub fn iterate_point(&self, x: &Rational, n: usize) -> Result<IntervalUnion> {
        let mut s = IntervalUnion::point(x.clone());
        if !x.in_unit() {
            return Err(Error::domain(format!("{x} is outside [0, 1]")));
        }
        for _ in 0..n {
            s = self.image_of(&s);
        }
        Ok(s)
    }

    /// `F^{-1}(x) = {y : x ∈ F(y)}`, by reflecting the graph.
    pub fn invert(&self) -> Result<PLMultiMap> {
        let cover = y_coverage(&self.pieces);
        if !cover.is_unit() {
            return Err(Error::NotInvertiblePl {
                uncovered: cover.complement_in_unit().to_string(),
            });
        }
        Ok(PLMultiMap {
            pieces: canonicalize(self.pieces.iter().map(GraphPiece::transpose).collect()),
        })
    }

    /// `F ∘ G`: `x ↦ F(G(x))`.
    pub fn compose(f: &PLMultiMap, g: &PLMultiMap) -> PLMultiMap {
        let mut out = Vec::new();
        for p in &g.pieces {
            for qp in &f.pieces {
                if let Some(c) = compose_pieces(qp, p) {
                    out.push(c);
                }
            }
        }
        PLMultiMap {
            pieces: canonicalize(out),
        }
    }

    /// `F^k` as a graph, `k ≥ 1`.
    pub fn power(&self, k: usize) -> PLMultiMap {
        let mut g = self.clone();
        for _ in 1..k {
            g = PLMultiMap::compose(self, &g);
        }
        g
    }

    /// The fiber of the map as a whole at every x is a single point.
    pub fn is_single_valued(&self) -> bool {
        let bps = self.breakpoints();
        let mut probes = bps.clone();
        for w in bps.windows(2) {
            let third = (&w[1] - &w[0]) / Rational::from_int(3);
            probes.push(&w[0] + &third);
            probes.push(&w[1] - &third);
        }
        probes.iter().all(|x| {
            let fib = self.evaluate(x).expect("probe in unit");
            fib.components().len() == 1 && fib.is_finite()
        })
    }
}

// Graph of `outer ∘ inner` restricted to the two pieces.
fn compose_pieces(outer: &GraphPiece, inner: &GraphPiece) -> Option<GraphPiece> {
    match inner {
        GraphPiece::Segment {
            x_lo,
            x_hi,
            slope: a,
            intercept: b,
        } => {
            // x-range where the inner value lands in the outer x-range
            let (u_lo, u_hi) = outer.x_range();
            let band = IntervalUnion::closed(u_lo.clone(), u_hi.clone());
            let xs = inner.preimage(&band);
            let part = xs.components().first()?.clone();
            let (lo, hi) = (part.lo().clone(), part.hi().clone());
            let _ = (x_lo, x_hi);
            match outer {
                GraphPiece::Segment {
                    slope: c,
                    intercept: d,
                    ..
                } => {
                    let slope = c * a;
                    let intercept = c * b + d;
                    if lo == hi {
                        let y = &slope * &lo + &intercept;
                        Some(GraphPiece::Rect {
                            x_lo: lo.clone(),
                            x_hi: lo,
                            y_lo: y.clone(),
                            y_hi: y,
                        })
                    } else {
                        Some(GraphPiece::Segment {
                            x_lo: lo,
                            x_hi: hi,
                            slope,
                            intercept,
                        })
                    }
                }
                GraphPiece::Rect { y_lo, y_hi, .. } => Some(GraphPiece::Rect {
                    x_lo: lo,
                    x_hi: hi,
                    y_lo: y_lo.clone(),
                    y_hi: y_hi.clone(),
                }),
            }
        }
        GraphPiece::Rect { x_lo, x_hi, .. } => {
            let k = inner.y_interval().intersect(&outer.x_interval())?;
            let img = outer.image_on(&k)?;
            Some(GraphPiece::Rect {
                x_lo: x_lo.clone(),
                x_hi: x_hi.clone(),
                y_lo: img.lo().clone(),
                y_hi: img.hi().clone(),
            })
        }
    }
}

impl fmt::Debug for PLMultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.pieces).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::rational::q;

    fn pts(xs: &[(i64, i64)]) -> IntervalUnion {
        IntervalUnion::points(xs.iter().map(|&(n, d)| q(n, d)))
    }

    #[test]
    fn evaluate_examples() {
        let f = builtin::tent_with_zero();
        assert_eq!(f.evaluate(&q(1, 2)).unwrap(), pts(&[(0, 1), (1, 1)]));
        let inv = f.invert().unwrap();
        assert!(inv.evaluate(&q(0, 1)).unwrap().is_unit());
        let g = builtin::identity_with_full_fibers();
        assert_eq!(g.evaluate(&q(3, 4)).unwrap(), pts(&[(0, 1), (3, 4), (1, 1)]));
        assert!(f.evaluate(&q(3, 2)).is_err());
    }

    #[test]
    fn images() {
        let f = builtin::tent_with_zero();
        let u = IntervalUnion::closed(q(3, 8), q(5, 8));
        let expect = IntervalUnion::point(q(0, 1)).union(&IntervalUnion::closed(q(3, 4), q(1, 1)));
        assert_eq!(f.image_of(&u), expect);
        let full = builtin::full_square();
        assert!(full.image_of(&IntervalUnion::open(q(1, 5), q(1, 4))).is_unit());
        assert!(f.image_of(&IntervalUnion::empty()).is_empty());
    }

    #[test]
    fn inversion() {
        let f = builtin::tent_with_zero();
        let inv = f.invert().unwrap();
        assert_eq!(inv.evaluate(&q(1, 2)).unwrap(), pts(&[(1, 4), (3, 4)]));
        assert_eq!(inv.invert().unwrap(), f);
        assert_eq!(builtin::full_square().invert().unwrap(), builtin::full_square());
        let low = PLMultiMap::new(vec![GraphPiece::rect(q(0, 1), q(1, 1), q(0, 1), q(1, 2)).unwrap()]).unwrap();
        assert_eq!(
            low.invert().unwrap_err(),
            Error::NotInvertiblePl {
                uncovered: "(1/2, 1]".into()
            }
        );
    }

    #[test]
    fn composition() {
        let f = builtin::tent_with_zero();
        let ff = PLMultiMap::compose(&f, &f);
        assert_eq!(ff.evaluate(&q(1, 4)).unwrap(), pts(&[(0, 1), (1, 1)]));
        let inv = f.invert().unwrap();
        let fi = PLMultiMap::compose(&f, &inv);
        assert!(fi.evaluate(&q(0, 1)).unwrap().is_unit());
        let id = PLMultiMap::identity();
        assert_eq!(PLMultiMap::compose(&id, &f), f);
        assert_eq!(PLMultiMap::compose(&f, &id), f);
    }

    #[test]
    fn validation() {
        let gap = vec![GraphPiece::segment(q(0, 1), q(1, 2), q(1, 1), q(0, 1)).unwrap()];
        assert!(PLMultiMap::new(gap).is_err());
        assert!(GraphPiece::segment(q(0, 1), q(1, 1), q(2, 1), q(0, 1)).is_err());
        assert!(matches!(
            GraphPiece::segment(q(0, 1), q(1, 1), q(0, 1), q(1, 3)).unwrap(),
            GraphPiece::Rect { .. }
        ));
    }

    #[test]
    fn single_valued_detection() {
        assert!(builtin::tent().is_single_valued());
        assert!(!builtin::tent_with_zero().is_single_valued());
    }
}
