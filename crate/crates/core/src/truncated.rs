//! Finite truncations of inverse-limit points of interval maps.
//!
//! A limit is described by its continuation rule: which values may follow a
//! coordinate `c` as the next coordinate. Three rules are supported: the
//! limit of `F` (`x_i ∈ F(x_{i+1})`), the limit of `F⁻¹` (`x_{i+1} ∈ F(x_i)`)
//! and the limit of `x ↦ {2x, 3x}`, whose continuations are `{c/2, c/3}`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::metrics::{rho_exact, EventuallyPeriodicSeq, GroundMetric};
use crate::pl::PLMultiMap;
use crate::rational::Rational;
use crate::verdict::{Certificate, Truth, Verdict};

pub const DEFAULT_DEPTH: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitDirection {
    /// `x_i ∈ F(x_{i+1})`.
    Forward,
    /// `x_{i+1} ∈ F(x_i)`.
    Inverse,
}

#[derive(Clone, Debug)]
pub enum LimitSystem {
    Pl { map: PLMultiMap, direction: LimitDirection },
    /// `x_i ∈ {2 x_{i+1}, 3 x_{i+1}}`.
    Ratio,
}

impl LimitSystem {
    pub fn forward(map: PLMultiMap) -> Self {
        LimitSystem::Pl {
            map,
            direction: LimitDirection::Forward,
        }
    }

    pub fn inverse(map: PLMultiMap) -> Self {
        LimitSystem::Pl {
            map,
            direction: LimitDirection::Inverse,
        }
    }

    fn check_coord(&self, c: &Rational) -> Result<()> {
        let ok = match self {
            LimitSystem::Pl { .. } => c.in_unit(),
            LimitSystem::Ratio => !c.is_negative(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("coordinate {c} is outside the space")))
        }
    }

    /// Values that may follow `c`.
    pub fn next_set(&self, c: &Rational) -> Result<IntervalUnion> {
        self.check_coord(c)?;
        Ok(match self {
            LimitSystem::Pl {
                map,
                direction: LimitDirection::Forward,
            } => map.preimage_of(&IntervalUnion::point(c.clone())),
            LimitSystem::Pl {
                map,
                direction: LimitDirection::Inverse,
            } => map.evaluate(c)?,
            LimitSystem::Ratio => IntervalUnion::points([c / &Rational::from_int(2), c / &Rational::from_int(3)]),
        })
    }

    /// Whether `next` may follow `prev`, checked on the defining condition.
    pub fn admits(&self, prev: &Rational, next: &Rational) -> Result<bool> {
        self.check_coord(prev)?;
        self.check_coord(next)?;
        Ok(match self {
            LimitSystem::Pl {
                map,
                direction: LimitDirection::Forward,
            } => map.evaluate(next)?.contains(prev),
            LimitSystem::Pl {
                map,
                direction: LimitDirection::Inverse,
            } => map.evaluate(prev)?.contains(next),
            LimitSystem::Ratio => {
                prev == &(next * &Rational::from_int(2)) || prev == &(next * &Rational::from_int(3))
            }
        })
    }

    /// Per-step contraction factor of every continuation, when one exists.
    pub fn contraction(&self) -> Option<Rational> {
        match self {
            LimitSystem::Ratio => Some(Rational::new(1, 2)),
            LimitSystem::Pl { .. } => None,
        }
    }
}

/// `TRUE`, or `FALSE` at the first index `i` whose pair `(t_i, t_{i+1})` violates the condition.
pub fn validate_tuple(sys: &LimitSystem, t: &[Rational]) -> Result<Verdict> {
    if t.is_empty() {
        return Err(Error::argument("tuple must be nonempty"));
    }
    for c in t {
        sys.check_coord(c)?;
    }
    for (i, w) in t.windows(2).enumerate() {
        if !sys.admits(&w[0], &w[1])? {
            return Ok(Verdict::no(Certificate::FirstViolation { index: i }));
        }
    }
    Ok(Verdict::yes(Certificate::Exhaustive {
        checked: t.len().saturating_sub(1),
    }))
}

/// The possible next coordinates of a valid tuple.
pub fn continuations(sys: &LimitSystem, t: &[Rational]) -> Result<IntervalUnion> {
    if !validate_tuple(sys, t)?.is_true() {
        return Err(Error::argument("tuple violates the limit condition"));
    }
    let last = t.last().expect("nonempty");
    let next = sys.next_set(last)?;
    if next.is_empty() {
        return Err(Error::DeadEnd(last.to_string()));
    }
    Ok(next)
}

/// Follows single-point continuations from `x0`. TRUE when the ray repeats
/// a coordinate (and so is forced forever), FALSE at the first branching
/// coordinate, UNDECIDED if still forced at `depth`.
pub fn forced_ray(sys: &LimitSystem, x0: &Rational, depth: usize) -> Result<Verdict> {
    if depth < 1 {
        return Err(Error::argument("depth must be at least 1"));
    }
    let mut coords = vec![x0.clone()];
    for index in 1..=depth {
        let next = continuations(sys, &coords[coords.len() - 1..])?;
        let vals = next.point_values();
        if !(next.is_finite() && vals.len() == 1) {
            return Ok(Verdict::no(Certificate::BranchesAt {
                index,
                continuations: next,
            }));
        }
        let v = vals.into_iter().next().expect("one value");
        if let Some(j) = coords.iter().position(|c| c == &v) {
            let cycle = coords.split_off(j);
            let ray = EventuallyPeriodicSeq::new(coords, cycle)?;
            return Ok(Verdict::yes(Certificate::ForcedRay { ray }));
        }
        coords.push(v);
    }
    Ok(Verdict::new(Truth::Undecided, Certificate::ForcedPrefix { coords }))
}

fn validate_seq(sys: &LimitSystem, s: &EventuallyPeriodicSeq<Rational>) -> Result<bool> {
    // One full pass through the preperiod and the cycle plus the wrap-around step.
    let len = s.preperiod().len() + s.cycle().len() + 1;
    let coords = s.prefix(len);
    Ok(validate_tuple(sys, &coords)?.is_true())
}

/// Looks for `y` with `ρ(base, y) < eps` and `ρ(σⁿ base, σⁿ y) > delta` for
/// some `1 ≤ n ≤ depth`. Candidates are finite continuation paths from heads
/// `base_0 ± 2^{-m}` closed by a constant tail, so every `ρ` is exact.
pub fn point_sensitivity_probe(
    sys: &LimitSystem,
    base: &EventuallyPeriodicSeq<Rational>,
    eps: &Rational,
    delta: &Rational,
    depth: usize,
) -> Result<Verdict> {
    if !eps.is_positive() || !delta.is_positive() {
        return Err(Error::argument("eps and delta must be positive"));
    }
    if depth < 1 {
        return Err(Error::argument("depth must be at least 1"));
    }
    if !validate_seq(sys, base)? {
        return Err(Error::argument("base is not a point of the limit"));
    }
    let two = Rational::from_int(2);
    if delta >= &two {
        return Ok(Verdict::no(Certificate::ContractionBound { bound: two }));
    }
    let mut probe = Probe {
        sys,
        base,
        eps,
        delta,
        depth,
        metric: GroundMetric::UnitInterval,
        closable: HashMap::new(),
    };
    let b0 = base.get(0).clone();
    for m in 1..=depth as i32 {
        for sign in [1, -1] {
            let head = &b0 + &(Rational::pow2(-m) * Rational::from_int(sign));
            if sys.check_coord(&head).is_err() {
                continue;
            }
            if let Some(found) = probe.search(&mut vec![head])? {
                return Ok(Verdict::yes(found));
            }
        }
    }
    if let Some(r) = sys.contraction() {
        // Continuations shrink by r, so after n ≥ 1 shifts the tail sum is at
        // most y_0 r^n / (1 - r/2) ≤ eps r / (1 - r/2) about a base of zeros.
        if base.cycle().iter().chain(base.preperiod()).all(Rational::is_zero) {
            let bound = eps * &r / &(Rational::one() - &r / &two);
            if &bound <= delta {
                return Ok(Verdict::no(Certificate::ContractionBound { bound }));
            }
        }
    }
    Ok(Verdict::undecided(depth as u64, "no separation witness at this depth"))
}

struct Probe<'a> {
    sys: &'a LimitSystem,
    base: &'a EventuallyPeriodicSeq<Rational>,
    eps: &'a Rational,
    delta: &'a Rational,
    depth: usize,
    metric: GroundMetric,
    // (coordinate, steps left) -> some constant tail is reachable
    closable: HashMap<(Rational, usize), bool>,
}

impl Probe<'_> {
    fn partial_rho(&self, coords: &[Rational]) -> Rational {
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c - self.base.get(i)).abs() * Rational::pow2(-(i as i32)))
            .sum()
    }

    fn can_close(&mut self, c: &Rational, left: usize) -> Result<bool> {
        if let Some(&b) = self.closable.get(&(c.clone(), left)) {
            return Ok(b);
        }
        let sample = self.sys.next_set(c)?.sample();
        let mut ok = false;
        for t in &sample {
            if self.sys.admits(t, t)? {
                ok = true;
                break;
            }
        }
        if !ok && left > 0 {
            for t in &sample {
                if self.can_close(t, left - 1)? {
                    ok = true;
                    break;
                }
            }
        }
        self.closable.insert((c.clone(), left), ok);
        Ok(ok)
    }

    // Depth-first over sampled continuations; the partial ρ is a lower bound
    // of the final ρ, so prefixes already at eps are cut.
    fn search(&mut self, coords: &mut Vec<Rational>) -> Result<Option<Certificate>> {
        if &self.partial_rho(coords) >= self.eps {
            return Ok(None);
        }
        let left = (self.depth + 1).saturating_sub(coords.len());
        if !self.can_close(coords.last().expect("nonempty"), left)? {
            return Ok(None);
        }
        let last = coords.last().expect("nonempty").clone();
        let next = self.sys.next_set(&last)?;
        for t in next.sample() {
            if self.sys.admits(&t, &t)? {
                let y = EventuallyPeriodicSeq::new(coords.clone(), vec![t.clone()])?;
                if let Some(c) = self.check(&y)? {
                    return Ok(Some(c));
                }
            }
        }
        if coords.len() > self.depth {
            return Ok(None);
        }
        for t in next.sample() {
            coords.push(t);
            let found = self.search(coords)?;
            coords.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn check(&self, y: &EventuallyPeriodicSeq<Rational>) -> Result<Option<Certificate>> {
        let rho_ball = rho_exact(self.base, y, &self.metric)?;
        if &rho_ball >= self.eps {
            return Ok(None);
        }
        for n in 1..=self.depth {
            let rho_separated = rho_exact(&self.base.shift_by(n), &y.shift_by(n), &self.metric)?;
            if &rho_separated > self.delta {
                return Ok(Some(Certificate::LimitSeparation {
                    y: y.clone(),
                    n,
                    rho_ball,
                    rho_separated,
                }));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::rational::q;

    fn tent0() -> LimitSystem {
        LimitSystem::forward(builtin::tent_with_zero())
    }

    #[test]
    fn tuples() {
        let s = tent0();
        assert!(validate_tuple(&s, &[q(1, 1), q(1, 2)]).unwrap().is_true());
        assert_eq!(
            validate_tuple(&s, &[q(1, 2), q(1, 2)]).unwrap().certificate,
            Certificate::FirstViolation { index: 0 }
        );
        assert!(validate_tuple(&s, &[q(1, 3)]).unwrap().is_true());
        assert!(validate_tuple(&s, &[q(2, 1)]).is_err());
    }

    #[test]
    fn continuation_sets() {
        let s = tent0();
        assert_eq!(
            continuations(&s, &[q(1, 1), q(1, 2)]).unwrap(),
            IntervalUnion::points([q(1, 4), q(3, 4)])
        );
        assert!(continuations(&s, &[q(0, 1)]).unwrap().is_unit());
        let full = LimitSystem::forward(builtin::full_square());
        assert!(continuations(&full, &[q(1, 5)]).unwrap().is_unit());
    }

    #[test]
    fn forced_rays() {
        let ratio = forced_ray(&LimitSystem::Ratio, &q(0, 1), 5).unwrap();
        assert_eq!(
            ratio.certificate,
            Certificate::ForcedRay {
                ray: EventuallyPeriodicSeq::constant(q(0, 1))
            }
        );
        let inv = LimitSystem::inverse(builtin::tent_with_zero());
        assert!(forced_ray(&inv, &q(0, 1), 5).unwrap().is_true());
        let v = forced_ray(&tent0(), &q(0, 1), 5).unwrap();
        let Certificate::BranchesAt { index, continuations } = v.certificate else { panic!() };
        assert_eq!(index, 1);
        assert!(continuations.is_unit());
    }

    #[test]
    fn probe_finds_separation_in_inverse_limit() {
        let inv = LimitSystem::inverse(builtin::tent_with_zero());
        let base = EventuallyPeriodicSeq::constant(q(0, 1));
        let v = point_sensitivity_probe(&inv, &base, &q(1, 3), &q(1, 4), 12).unwrap();
        let Certificate::LimitSeparation { y, n, rho_ball, rho_separated } = v.certificate else { panic!() };
        assert!(rho_ball < q(1, 3) && rho_separated > q(1, 4));
        assert_eq!(rho_exact(&base, &y, &GroundMetric::UnitInterval).unwrap(), rho_ball);
        assert!(n >= 1 && validate_tuple(&inv, &y.prefix(20)).unwrap().is_true());
    }

    #[test]
    fn probe_certifies_ratio_limit() {
        let base = EventuallyPeriodicSeq::constant(q(0, 1));
        let v = point_sensitivity_probe(&LimitSystem::Ratio, &base, &q(1, 3), &q(1, 4), 12).unwrap();
        assert_eq!(v, Verdict::no(Certificate::ContractionBound { bound: q(2, 9) }));
        let big = point_sensitivity_probe(&tent0(), &base, &q(1, 3), &q(2, 1), 4).unwrap();
        assert!(big.is_false());
        let bad = EventuallyPeriodicSeq::constant(q(1, 2));
        assert!(point_sensitivity_probe(&tent0(), &bad, &q(1, 3), &q(1, 4), 4).is_err());
    }
}
