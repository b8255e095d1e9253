//! Orbit arithmetic for `F(x) = {2x, 3x}` on the nonnegative rationals.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Multiplier per step: `false` for 2, `true` for 3.
pub type Schedule = [bool];

fn factor(three: bool) -> Rational {
    Rational::from_int(if three { 3 } else { 2 })
}

/// Orbits of `x0` and `x0 + eps` following the same branch at every step.
pub fn matched_orbits(x0: &Rational, eps: &Rational, schedule: &Schedule) -> (Vec<Rational>, Vec<Rational>) {
    let mut xs = vec![x0.clone()];
    let mut ys = vec![x0 + eps];
    for &s in schedule {
        let c = factor(s);
        let nx = xs.last().expect("nonempty") * &c;
        let ny = ys.last().expect("nonempty") * &c;
        xs.push(nx);
        ys.push(ny);
    }
    (xs, ys)
}

/// `min |y_L - x_L|` over all branch schedules of length `L`.
pub fn ratio_orbit_separation(x0: &Rational, eps: &Rational, l: usize) -> Result<Rational> {
    if x0.is_negative() || eps.is_negative() {
        return Err(Error::argument("x0 and eps must be nonnegative"));
    }
    if l < 1 {
        return Err(Error::argument("L must be at least 1"));
    }
    // Schedules with the same number of 3-steps end at the same pair, so one
    // representative per count covers all 2^L of them.
    let mut best: Option<Rational> = None;
    for threes in 0..=l {
        let schedule: Vec<bool> = (0..l).map(|i| i < threes).collect();
        let (xs, ys) = matched_orbits(x0, eps, &schedule);
        let sep = (&ys[l] - &xs[l]).abs();
        if best.as_ref().is_none_or(|b| &sep < b) {
            best = Some(sep);
        }
    }
    Ok(best.expect("at least one schedule"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn separations() {
        assert_eq!(ratio_orbit_separation(&q(1, 1), &q(1, 8), 4).unwrap(), q(2, 1));
        assert_eq!(ratio_orbit_separation(&q(0, 1), &q(1, 4), 3).unwrap(), q(2, 1));
        assert_eq!(ratio_orbit_separation(&q(5, 7), &q(0, 1), 3).unwrap(), q(0, 1));
        assert!(ratio_orbit_separation(&q(-1, 1), &q(1, 4), 3).is_err());
        assert!(ratio_orbit_separation(&q(1, 1), &q(1, 4), 0).is_err());
    }

    #[test]
    fn matched_branches_keep_ratio() {
        let (xs, ys) = matched_orbits(&q(1, 3), &q(1, 9), &[true, false, true]);
        for i in 1..xs.len() {
            assert_eq!(&ys[i] / &ys[i - 1], &xs[i] / &xs[i - 1]);
        }
    }
}
