//! Run the full verification checklist programmatically.
//!
//! The same checks back the `double-delta verify` subcommand and the
//! acceptance-gate integration test: spectrum counting, quantization
//! residuals, matching conditions, the transform round trip, the integral
//! table, positive-energy rejection, the square-well limit, and the
//! derivative identities. Each check reports its worst observed error as a
//! fraction of the allowed tolerance.
//!
//! Run with: `cargo run --example acceptance_checklist`

use double_delta::verify::run_all;

fn main() {
    let report = run_all(2026);
    println!("seed {}", report.seed);
    for check in &report.checks {
        println!(
            "{} {:<28} worst {:>9.3e} of allowed — {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.worst_ratio,
            check.detail
        );
    }
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
