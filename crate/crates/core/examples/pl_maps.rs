//! Piecewise-linear set-valued maps on [0, 1]: fibers, inversion and
//! bounded searches for transitivity and sensitivity.

use setdyn::builtin;
use setdyn::pl::analysis::{
    default_eps_schedule, find_non_sensitivity_witness, full_fiber_points, is_lsc, pl_is_transitive_bounded,
    pl_periodic_dense_bounded, verify_strong_sensitivity,
};
use setdyn::{q, PLMultiMap};

fn main() -> setdyn::Result<()> {
    let f = builtin::tent_with_zero();
    for x in [q(0, 1), q(1, 4), q(1, 2)] {
        println!("F({x}) = {}", f.evaluate(&x)?);
    }
    let inv = f.invert()?;
    println!("full fibers of the inverse: {}", full_fiber_points(&inv));
    println!("F∘F⁻¹ has {} pieces", PLMultiMap::compose(&f, &inv).pieces().len());

    println!("transitive: {}", pl_is_transitive_bounded(&f, 3, 10)?.value);
    println!("periodic-dense: {}", pl_periodic_dense_bounded(&f, 3, 4)?.value);
    let eps: Vec<_> = default_eps_schedule().into_iter().take(4).collect();
    println!("strongly sensitive on a grid: {}", verify_strong_sensitivity(&f, &q(1, 8), 16, &eps, 40)?.value);
    println!("inverse strongly sensitive: {}", verify_strong_sensitivity(&inv, &q(1, 8), 16, &eps, 40)?.value);
    println!("lower semi-continuous: {}", is_lsc(&f).value);

    let g = builtin::identity_with_full_fibers();
    let v = find_non_sensitivity_witness(&g, &q(1, 8), 64)?;
    println!("non-sensitivity witness: {}", serde_json::to_string(&v.certificate).expect("json"));
    Ok(())
}
