//! Exact distances between eventually periodic sequences and interval sets.

use setdyn::metrics::{hausdorff_intervals, rho_bounds, rho_exact};
use setdyn::{q, EventuallyPeriodicSeq, GroundMetric, IntervalUnion};

fn main() -> setdyn::Result<()> {
    let m = GroundMetric::Discrete { states: 2 };
    let zeros = EventuallyPeriodicSeq::constant(0usize);
    let alternating = EventuallyPeriodicSeq::periodic(vec![0usize, 1])?;
    println!("rho(000..., 0101...) = {}", rho_exact(&zeros, &alternating, &m)?);
    for k in [1, 4, 8] {
        let (lo, hi) = rho_bounds(&zeros.prefix(k), &alternating.prefix(k), &m)?;
        println!("  prefixes of length {k}: [{lo}, {hi}]");
    }

    let a = IntervalUnion::closed(q(0, 1), q(1, 4)).union(&IntervalUnion::point(q(1, 1)));
    let b = IntervalUnion::closed(q(1, 2), q(3, 4));
    println!("H({a}, {b}) = {}", hausdorff_intervals(&a, &b)?);
    Ok(())
}
