//! Finite truncations of inverse limits over [0, 1] and over the ratio map
//! x ↦ {2x, 3x}.

use setdyn::pl::ratio::ratio_orbit_separation;
use setdyn::truncated::{continuations, forced_ray, point_sensitivity_probe, validate_tuple, LimitSystem};
use setdyn::{builtin, q, EventuallyPeriodicSeq};

fn main() -> setdyn::Result<()> {
    let sys = LimitSystem::forward(builtin::tent());
    let t = vec![q(1, 2), q(1, 4)];
    println!("{t:?} valid: {}", validate_tuple(&sys, &t)?.value);
    println!("continuations: {}", continuations(&sys, &t)?);

    let zero = q(0, 1);
    let ray = forced_ray(&LimitSystem::Ratio, &zero, 16)?;
    println!("forced ray at 0: {}", serde_json::to_string(&ray).expect("json"));
    let base = EventuallyPeriodicSeq::constant(zero);
    let probe = point_sensitivity_probe(&LimitSystem::Ratio, &base, &q(1, 3), &q(1, 2), 12)?;
    println!("probe near 0: {}", serde_json::to_string(&probe).expect("json"));

    for l in [1, 5, 10] {
        println!("separation after {l} steps: {}", ratio_orbit_separation(&q(1, 10), &q(1, 100), l)?);
    }
    Ok(())
}
