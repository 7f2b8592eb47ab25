//! Runs a verification suite through the library, as the `reflect verify`
//! command does, and prints the text and JSON reports.

use sl2_reflect::cli::{run_verify, Config, Suite};
use sl2_reflect::Result;

fn main() -> Result<()> {
    let suite: Suite = std::env::args().nth(1).as_deref().unwrap_or("algebra").parse()?;
    let cfg = Config::from_json(r#"{"params": {"s": 1.0, "g": 1.0, "beta": 1.0}, "seed": 7}"#)?;
    let report = run_verify(suite, &cfg)?;
    print!("{}", report.to_text());
    if let Some(first) = report.cases.first() {
        println!("first case as JSON: {}", serde_json::to_string(first).expect("serialisable"));
    }
    Ok(())
}
