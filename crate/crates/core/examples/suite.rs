//! Runs the acceptance battery through the library, as the `suite` command does.
//!
//! cargo run --release --example suite -- 1,2,13

use qgverify::cli::{run_suite, Profile, RunConfig};

fn main() -> qgverify::Result<()> {
    let only: Option<Vec<u32>> =
        std::env::args().nth(1).map(|s| s.split(',').map(|t| t.trim().parse().expect("criterion id")).collect());
    let outcomes = run_suite(Profile::Ci, only.as_deref(), &RunConfig::default())?;
    for o in &outcomes {
        println!("{}", serde_json::to_string(o).unwrap());
    }
    Ok(())
}
