//! Periodic points and bounded dynamical checks for [`PLMultiMap`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalUnion};
use crate::rational::Rational;
use crate::verdict::{Certificate, SeparationRow, Verdict};

use super::{GraphPiece, PLMultiMap};

pub const DEFAULT_GRID: usize = 64;
pub const DEFAULT_HORIZON: usize = 64;

/// `2^-3, …, 2^-10`.
pub fn default_eps_schedule() -> Vec<Rational> {
    (3..=10).map(|k| Rational::pow2(-k)).collect()
}

/// A finite orbit with the index of the piece used at each step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchOrbit {
    pub points: Vec<Rational>,
    pub choices: Vec<usize>,
}

impl BranchOrbit {
    /// Recovers branch choices for a point sequence; `None` if some step is not in the fiber.
    pub fn from_points(f: &PLMultiMap, points: Vec<Rational>) -> Option<Self> {
        let mut choices = Vec::with_capacity(points.len().saturating_sub(1));
        for w in points.windows(2) {
            let idx = f
                .pieces()
                .iter()
                .position(|p| p.fiber_at(&w[0]).is_some_and(|fib| fib.contains(&w[1])))?;
            choices.push(idx);
        }
        Some(BranchOrbit { points, choices })
    }

    /// Replays every step against the recorded piece.
    pub fn verify(&self, f: &PLMultiMap) -> bool {
        self.choices.len() + 1 == self.points.len()
            && self.points.windows(2).zip(&self.choices).all(|(w, &c)| {
                f.pieces()
                    .get(c)
                    .and_then(|p| p.fiber_at(&w[0]))
                    .is_some_and(|fib| fib.contains(&w[1]))
            })
    }
}

/// Forward layers `F^j(x)` for `j = 0..=n`.
pub fn forward_layers(f: &PLMultiMap, x: &Rational, n: usize) -> Vec<IntervalUnion> {
    let mut layers = vec![IntervalUnion::point(x.clone())];
    for _ in 0..n {
        let next = f.image_of(layers.last().expect("nonempty"));
        layers.push(next);
    }
    layers
}

/// An orbit `y_0 ∈ layers[0], …, y_n = z` with `y_j ∈ layers[j]`, traced backwards.
pub fn orbit_ending_at(f: &PLMultiMap, layers: &[IntervalUnion], z: &Rational) -> Option<BranchOrbit> {
    let n = layers.len().checked_sub(1)?;
    if !layers[n].contains(z) {
        return None;
    }
    let mut rev = vec![z.clone()];
    for j in (0..n).rev() {
        let next = rev.last().expect("nonempty");
        let cand = layers[j].intersection(&f.preimage_of(&IntervalUnion::point(next.clone())));
        rev.push(cand.representative()?);
    }
    rev.reverse();
    let orbit = BranchOrbit::from_points(f, rev)?;
    orbit.verify(f).then_some(orbit)
}

/// `{x : x ∈ G(x)}` computed piece by piece.
pub fn diagonal(g: &PLMultiMap) -> IntervalUnion {
    let mut parts = Vec::new();
    for p in g.pieces() {
        match p {
            GraphPiece::Segment {
                x_lo,
                x_hi,
                slope,
                intercept,
            } => {
                let one = Rational::one();
                if slope == &one {
                    if intercept.is_zero() {
                        parts.push(p.x_interval());
                    }
                } else {
                    let x = intercept / &(&one - slope);
                    if x_lo <= &x && &x <= x_hi {
                        parts.push(Interval::point(x));
                    }
                }
            }
            GraphPiece::Rect { .. } => {
                if let Some(i) = p.x_interval().intersect(&p.y_interval()) {
                    parts.push(i);
                }
            }
        }
    }
    IntervalUnion::from_parts(parts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlPeriodicPoints {
    /// Diagonal points of `F^k` for each `k`.
    pub by_period: Vec<(usize, IntervalUnion)>,
    /// Union over all `k ≤ p`.
    pub all: IntervalUnion,
    /// A replayed cycle `x, …, x` for a representative of every component.
    pub witnesses: Vec<BranchOrbit>,
}

/// Points with a branch cycle of length `k ≤ p`.
pub fn pl_periodic_points_bounded(f: &PLMultiMap, p: usize) -> Result<PlPeriodicPoints> {
    if p < 1 {
        return Err(Error::argument("period bound must be at least 1"));
    }
    let mut by_period = Vec::with_capacity(p);
    let mut all = IntervalUnion::empty();
    let mut witnesses = Vec::new();
    let mut g = f.clone();
    for k in 1..=p {
        if k > 1 {
            g = PLMultiMap::compose(f, &g);
        }
        let mut verified = Vec::new();
        for comp in diagonal(&g).components() {
            let r = comp.representative();
            let layers = forward_layers(f, &r, k);
            if let Some(orbit) = orbit_ending_at(f, &layers, &r) {
                if orbit.points[0] == r {
                    verified.push(comp.clone());
                    witnesses.push(orbit);
                }
            }
        }
        let d = IntervalUnion::from_parts(verified);
        all = all.union(&d);
        by_period.push((k, d));
    }
    Ok(PlPeriodicPoints {
        by_period,
        all,
        witnesses,
    })
}

/// Dyadic cells of `[0, 1]` at `resolution`; interior cells are open, the end cells include `0` and `1`.
pub fn dyadic_cells(resolution: u32) -> Vec<IntervalUnion> {
    let m = 1i64 << resolution;
    (0..m)
        .map(|j| {
            let lo = Rational::new(j, m);
            let hi = Rational::new(j + 1, m);
            let iv = Interval::new(lo, j == 0, hi, j + 1 == m).expect("nonempty cell");
            IntervalUnion::from_parts([iv])
        })
        .collect()
}

/// Transitivity on dyadic basis cells: some `F^n(U)` meets every `V`, `n ≤ horizon`.
pub fn pl_is_transitive_bounded(f: &PLMultiMap, resolution: u32, horizon: usize) -> Result<Verdict> {
    if resolution < 1 || horizon < 1 {
        return Err(Error::argument("resolution and horizon must be at least 1"));
    }
    let cells = dyadic_cells(resolution);
    let rows: Vec<std::result::Result<Vec<(usize, usize, usize)>, (usize, usize)>> = cells
        .par_iter()
        .enumerate()
        .map(|(i, u)| {
            let mut images = Vec::with_capacity(horizon);
            let mut w = u.clone();
            for _ in 0..horizon {
                let next = f.image_of(&w);
                let stable = next == w;
                w = next;
                images.push(w.clone());
                if stable {
                    break;
                }
            }
            let mut row = Vec::with_capacity(cells.len());
            for (j, v) in cells.iter().enumerate() {
                match images.iter().position(|img| img.intersects(v)) {
                    Some(n) => row.push((i, j, n + 1)),
                    None => return Err((i, j)),
                }
            }
            Ok(row)
        })
        .collect();
    let mut steps = Vec::new();
    for r in rows {
        match r {
            Ok(row) => steps.extend(row),
            Err((i, j)) => {
                return Ok(Verdict::new(
                    crate::verdict::Truth::Undecided,
                    Certificate::BasisPairUnreached {
                        from: cells[i].clone(),
                        to: cells[j].clone(),
                        horizon,
                    },
                ))
            }
        }
    }
    Ok(Verdict::yes(Certificate::BasisTable { resolution, steps }))
}

/// Every dyadic cell contains a point of period at most `p`.
pub fn pl_periodic_dense_bounded(f: &PLMultiMap, resolution: u32, p: usize) -> Result<Verdict> {
    if resolution < 1 {
        return Err(Error::argument("resolution must be at least 1"));
    }
    let pp = pl_periodic_points_bounded(f, p)?;
    let mut witnesses = Vec::new();
    for (idx, cell) in dyadic_cells(resolution).into_iter().enumerate() {
        let hit = pp
            .by_period
            .iter()
            .find_map(|(k, d)| d.intersection(&cell).representative().map(|x| (x, *k)));
        match hit {
            Some((x, k)) => witnesses.push((idx, x, k)),
            None => {
                return Ok(Verdict::new(
                    crate::verdict::Truth::Undecided,
                    Certificate::CellWithoutPeriodicPoint { cell, period_bound: p },
                ))
            }
        }
    }
    Ok(Verdict::yes(Certificate::PeriodicCells { resolution, witnesses }))
}

/// `{x : F(x) = [0, 1]}`. Fibers are constant in shape between breakpoints,
/// so it suffices to test breakpoints and one point per open cell.
pub fn full_fiber_points(f: &PLMultiMap) -> IntervalUnion {
    cellwise_set(f, &f.breakpoints(), |fib| fib.is_unit())
}

/// `{x : F(x)` is a single point`}`.
pub fn singleton_fiber_points(f: &PLMultiMap) -> IntervalUnion {
    // Crossings of affine pieces are where two branches coincide.
    let mut crit = f.breakpoints();
    let lines: Vec<(&Rational, &Rational, Rational, Rational)> = f
        .pieces()
        .iter()
        .filter_map(|p| match p {
            GraphPiece::Segment {
                x_lo,
                x_hi,
                slope,
                intercept,
            } => Some((x_lo, x_hi, slope.clone(), intercept.clone())),
            GraphPiece::Rect { x_lo, x_hi, y_lo, y_hi } if y_lo == y_hi => {
                Some((x_lo, x_hi, Rational::zero(), y_lo.clone()))
            }
            _ => None,
        })
        .collect();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if a.2 != b.2 {
                let x = (&b.3 - &a.3) / &(&a.2 - &b.2);
                if x.in_unit() {
                    crit.push(x);
                }
            }
        }
    }
    crit.sort();
    crit.dedup();
    cellwise_set(f, &crit, |fib| fib.components().len() == 1 && fib.components()[0].is_point())
}

fn cellwise_set(f: &PLMultiMap, crit: &[Rational], pred: impl Fn(&IntervalUnion) -> bool) -> IntervalUnion {
    let test = |x: &Rational| pred(&f.evaluate(x).expect("probe in unit"));
    let mut parts = Vec::new();
    for x in crit {
        if test(x) {
            parts.push(Interval::point(x.clone()));
        }
    }
    for w in crit.windows(2) {
        if test(&w[0].midpoint(&w[1])) {
            parts.push(Interval::open(w[0].clone(), w[1].clone()).expect("distinct"));
        }
    }
    IntervalUnion::from_parts(parts)
}

fn grid_points(grid: usize) -> Vec<Rational> {
    (0..=grid).map(|i| Rational::new(i as i64, grid as i64)).collect()
}

fn check_search_args(delta: &Rational, grid: usize, eps: &[Rational], horizon: usize) -> Result<()> {
    if !delta.is_positive() {
        return Err(Error::argument("delta must be positive"));
    }
    if grid < 1 || horizon < 1 {
        return Err(Error::argument("grid and horizon must be at least 1"));
    }
    if eps.is_empty() || eps.iter().any(|e| !e.is_positive()) {
        return Err(Error::argument("epsilon schedule must be nonempty and positive"));
    }
    Ok(())
}

// Offsets j/6 for j = 1, -1, 2, -2, ..., 5, -5 inside the ball.
fn ball_candidates(x: &Rational, eps: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    for j in 1..=5i64 {
        for s in [j, -j] {
            let y = x + &(eps * &Rational::new(s, 6));
            if y.in_unit() {
                out.push(y);
            }
        }
    }
    out
}

fn separation_row(
    f: &PLMultiMap,
    x: &Rational,
    eps: &Rational,
    delta: &Rational,
    x_layers: &[IntervalUnion],
    horizon: usize,
) -> Option<SeparationRow> {
    let cands: Vec<(Rational, Vec<IntervalUnion>)> = ball_candidates(x, eps)
        .into_iter()
        .map(|y| {
            let layers = forward_layers(f, &y, horizon);
            (y, layers)
        })
        .collect();
    for n in 1..=horizon {
        for (y, layers) in &cands {
            if let Some((z, distance)) = layers[n].point_farther_than(&x_layers[n], delta) {
                if let Some(orbit) = orbit_ending_at(f, &layers[..=n], &z) {
                    return Some(SeparationRow {
                        x: x.clone(),
                        epsilon: eps.clone(),
                        y: y.clone(),
                        n,
                        orbit: orbit.points,
                        distance,
                    });
                }
            }
        }
    }
    None
}

/// Strong sensitivity with constant `delta`, checked on the grid `i/grid`.
/// A full fiber refutes it exactly; otherwise the answer is TRUE on the grid
/// or UNDECIDED.
pub fn verify_strong_sensitivity(
    f: &PLMultiMap,
    delta: &Rational,
    grid: usize,
    eps_schedule: &[Rational],
    horizon: usize,
) -> Result<Verdict> {
    check_search_args(delta, grid, eps_schedule, horizon)?;
    if let Some(x) = full_fiber_points(f).representative() {
        return Ok(Verdict::no(Certificate::FullFiberAt { x }));
    }
    let per_x: Vec<(Vec<SeparationRow>, Vec<(Rational, Rational)>)> = grid_points(grid)
        .par_iter()
        .map(|x| {
            let x_layers = forward_layers(f, x, horizon);
            let mut rows = Vec::new();
            let mut fails = Vec::new();
            for eps in eps_schedule {
                match separation_row(f, x, eps, delta, &x_layers, horizon) {
                    Some(r) => rows.push(r),
                    None => fails.push((x.clone(), eps.clone())),
                }
            }
            (rows, fails)
        })
        .collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (r, fl) in per_x {
        rows.extend(r);
        failures.extend(fl);
    }
    Ok(if failures.is_empty() {
        Verdict::yes(Certificate::GridWitnesses { rows })
    } else {
        Verdict::new(crate::verdict::Truth::Undecided, Certificate::GridFailures { failures })
    })
}

/// Looks for `(x, ε)` whose closed ball has a forward-invariant hull of
/// diameter at most `delta`, which shows `delta` is not a sensitivity constant.
pub fn find_non_sensitivity_witness(f: &PLMultiMap, delta: &Rational, horizon: usize) -> Result<Verdict> {
    find_non_sensitivity_witness_with(f, delta, DEFAULT_GRID, &default_eps_schedule(), horizon)
}

pub fn find_non_sensitivity_witness_with(
    f: &PLMultiMap,
    delta: &Rational,
    grid: usize,
    eps_schedule: &[Rational],
    horizon: usize,
) -> Result<Verdict> {
    check_search_args(delta, grid, eps_schedule, horizon)?;
    for x in grid_points(grid) {
        for eps in eps_schedule {
            let lo = (&x - eps).max_of(&Rational::zero()).clone();
            let hi = (&x + eps).min_of(&Rational::one()).clone();
            let mut region = IntervalUnion::closed(lo, hi);
            for _ in 0..=horizon {
                if region.diameter().is_some_and(|d| &d > delta) {
                    break;
                }
                let grown = region.union(&f.image_of(&region));
                if grown == region {
                    return Ok(Verdict::no(Certificate::TrappingRegion {
                        x,
                        epsilon: eps.clone(),
                        region,
                    }));
                }
                region = grown;
            }
        }
    }
    Ok(Verdict::undecided(
        horizon as u64,
        format!("no trapping region of diameter at most {delta}"),
    ))
}

/// Least `n ≤ horizon` with `f^n(U) = [0, 1]` for a single-valued map.
pub fn is_exact_bounded(f: &PLMultiMap, u: &IntervalUnion, horizon: usize) -> Result<Verdict> {
    if !f.is_single_valued() {
        return Err(Error::argument("exactness needs a single-valued map"));
    }
    if u.is_empty() {
        return Err(Error::argument("U must be nonempty"));
    }
    let mut w = u.clone();
    for n in 1..=horizon {
        w = f.image_of(&w);
        if w.is_unit() {
            return Ok(Verdict::yes(Certificate::ExactAt { n }));
        }
    }
    Ok(Verdict::undecided(horizon as u64, "image never covered [0, 1]"))
}

/// Lower semi-continuity via openness of preimages. A failure can only sit
/// at a breakpoint where `F(b)` exceeds the limit of fibers from one side.
pub fn is_lsc(f: &PLMultiMap) -> Verdict {
    for b in f.breakpoints() {
        let fib = f.evaluate(&b).expect("breakpoint in unit");
        for left in [true, false] {
            if (left && b.is_zero()) || (!left && b == Rational::one()) {
                continue;
            }
            let limit = IntervalUnion::from_parts(f.pieces().iter().filter_map(|p| p.one_sided_fiber(&b, left)));
            let extra = fib.intersection(&limit.complement_in_unit());
            let Some(y) = extra.representative() else { continue };
            let radius = match limit.distance_to_point(&y) {
                Some(d) if d.is_positive() => d / Rational::from_int(2),
                _ => continue,
            };
            let open_set = IntervalUnion::open(&y - &radius, &y + &radius).intersection(&IntervalUnion::unit());
            let preimage = f.preimage_of(&open_set);
            if !preimage.is_relatively_open() {
                return Verdict::no(Certificate::LscFailure {
                    x: b,
                    open_set,
                    preimage,
                });
            }
        }
    }
    Verdict::yes(Certificate::Exhaustive {
        checked: f.breakpoints().len(),
    })
}
