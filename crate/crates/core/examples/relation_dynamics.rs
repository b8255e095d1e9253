//! Dynamical properties of set-valued maps on finite sets.

use setdyn::builtin;
use setdyn::relation::oracle::strong_sensitivity_oracle;
use setdyn::q;

fn main() -> setdyn::Result<()> {
    for name in builtin::finite_names() {
        let f = builtin::finite_by_name(name).expect("built-in");
        println!(
            "{name:<12} transitive {:<9} periodic-dense {:<9} sensitive {:<9} strongly {:<9} devaney {}",
            f.is_transitive().value,
            f.periodic_dense().value,
            f.is_sensitive().value,
            f.is_strongly_sensitive().value,
            f.is_devaney().value,
        );
    }
    let f = builtin::golden_mean();
    println!("periodic states of golden-mean: {:?}", f.periodic_points().states.iter().collect::<Vec<_>>());
    println!("F^3(1) = {:?}", f.iterate(1, 3)?.iter().collect::<Vec<_>>());
    let oracle = strong_sensitivity_oracle(&f, &q(1, 2), 4)?;
    println!("brute-force strong sensitivity: {}", serde_json::to_string(&oracle).expect("json"));
    Ok(())
}
