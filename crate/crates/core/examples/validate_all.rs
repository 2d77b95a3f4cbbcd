//! Runs the full validation suite and prints one line per check.
//!
//! cargo run --release --example validate_all -- [--skip-rwa]

use vibronic::validation::{run_all, ValidationOptions};

fn main() {
    let skip_rwa = std::env::args().any(|a| a == "--skip-rwa");
    let checks = run_all(&ValidationOptions {
        include_rwa: !skip_rwa,
        ..Default::default()
    });
    for c in &checks {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        println!(
            "{verdict}  {:<32} {:>12.3e} <= {:.1e}",
            c.name, c.measured, c.bound
        );
    }
    if checks.iter().any(|c| !c.passed) {
        std::process::exit(2);
    }
}
