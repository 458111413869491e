//! Acceptance gate: runs every verification criterion with its pinned
//! tolerance and runtime budget, printing one PASS/FAIL line per criterion
//! (visible with `cargo test --test acceptance -- --nocapture`, and always
//! shown on failure).

use double_delta::verify::{
    criterion_derivative_identities, criterion_integral_table, criterion_matching_conditions,
    criterion_positive_energy_rejection, criterion_quantization_residuals,
    criterion_spectrum_counting, criterion_square_well_limit, criterion_transform_roundtrip,
    Check,
};
use std::time::{Duration, Instant};

#[test]
fn acceptance_gate() {
    // Fixed seed: the gate is deterministic run to run.
    let seed: u64 = 0xD0D0_2026;

    let entries: Vec<(u64, Box<dyn FnOnce() -> Check>)> = vec![
        (1, Box::new(criterion_spectrum_counting)),
        (1, Box::new(move || criterion_quantization_residuals(seed))),
        (1, Box::new(move || criterion_matching_conditions(seed))),
        (30, Box::new(criterion_transform_roundtrip)),
        (30, Box::new(move || criterion_integral_table(seed))),
        (30, Box::new(move || criterion_positive_energy_rejection(seed))),
        (60, Box::new(criterion_square_well_limit)),
        (5, Box::new(criterion_derivative_identities)),
    ];

    let mut failures = Vec::new();
    for (budget_secs, run) in entries {
        let started = Instant::now();
        let check = run();
        let elapsed = started.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget_secs);
        let ok = check.passed && in_budget;
        println!(
            "{} {:<28} worst {:>9.3e} of allowed, {:>8.2?} (budget {}s) — {}",
            if ok { "PASS" } else { "FAIL" },
            check.name,
            check.worst_ratio,
            elapsed,
            budget_secs,
            check.detail
        );
        if !ok {
            failures.push(format!(
                "{} (passed: {}, in budget: {})",
                check.name, check.passed, in_budget
            ));
        }
    }
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
}
