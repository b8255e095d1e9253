//! Reading and writing JSON system descriptions.

use setdyn::system_file::{load_system, parse_system, to_json};
use setdyn::Error;

fn main() -> setdyn::Result<()> {
    let sys = parse_system(r#"{"kind":"finite","states":["a","b"],"map":{"a":["a","b"],"b":["b"]}}"#)?;
    println!("{} system: {}", sys.kind(), to_json(&sys));
    println!("built-in tent: {}", to_json(&load_system("builtin:tent")?));

    let bad = r#"{"kind":"pl","pieces":[{"type":"rect","x":["0","1"],"y":["0","2/0"]}]}"#;
    match parse_system(bad) {
        Err(Error::Validation { path, message }) => println!("rejected at {path}: {message}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
