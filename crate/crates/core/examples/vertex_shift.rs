//! The inverse limit of a finite system as a vertex shift.

use setdyn::shift::oracle::shift_oracle;
use setdyn::{builtin, VertexShift};

fn main() -> setdyn::Result<()> {
    let f = builtin::loops();
    let shift = VertexShift::build(&f);
    println!("core states: {:?}", shift.core().iter().collect::<Vec<_>>());
    println!("allowed steps: {:?}", shift.allowed_steps());
    let words = shift.enumerate_words(3)?;
    println!("{} cylinder words up to length 3", words.len());
    for p in shift.periodic_points(2) {
        println!("  periodic point {:?}...", p.prefix(6));
    }
    println!("transitive {}, periodic-dense {}, sensitive {}", shift.transitive().value, shift.periodic_dense().value, shift.sensitive().value);

    let bundle = shift_oracle(&shift, 8, 4)?;
    println!("oracle disagreements: {:?}", bundle.disagreements(&shift));
    Ok(())
}
