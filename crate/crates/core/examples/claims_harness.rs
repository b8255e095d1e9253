//! Runs a few registered claims over small families and prints the report.

use setdyn::harness::{self, report, Family};

fn main() -> setdyn::Result<()> {
    let families = [Family::Exhaustive { n: 2 }, Family::Random { n: 3, count: 200, seed: 1 }];
    let ids: Vec<String> = ["T3.2", "T5.4", "L3.1"].iter().map(|s| s.to_string()).collect();
    let reports = harness::run_claims(Some(&ids), &families)?;
    print!("{}", report::render(&report::to_json(&reports))?);

    let examples = harness::paper_example_suite();
    let agreeing = examples.iter().filter(|r| r.status == harness::Status::AgreesWithPaper).count();
    println!("worked examples: {agreeing} of {} agree", examples.len());
    Ok(())
}
