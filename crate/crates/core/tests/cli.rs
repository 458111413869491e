//! End-to-end tests of the command-line binary: argument handling, exit
//! codes, schema headers, golden outputs, and byte-level determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_double-delta"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}

fn stdout_str(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is UTF-8")
}

fn stderr_str(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr is UTF-8")
}

#[test]
fn no_command_is_a_usage_error() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("Usage"));
}

#[test]
fn unknown_flags_are_rejected() {
    let out = run(&["spectrum", "--a", "0.25", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["spectrum", "--help"]).status.code(), Some(0));
}

#[test]
fn coupling_and_physical_flags_conflict() {
    let out = run(&["spectrum", "--a", "0.25", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_well_parameters_exit_two_with_guidance() {
    let out = run(&["spectrum"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_str(&out);
    assert!(err.contains("--a") && err.contains("--alpha"), "{err}");
}

#[test]
fn spectrum_golden_two_states() {
    let out = run(&["spectrum", "--a", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_str(&out),
        include_str!("golden/spectrum_a_quarter.csv")
    );
}

#[test]
fn spectrum_repulsive_is_empty_but_successful() {
    let out = run(&["spectrum", "--a", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_str(&out),
        include_str!("golden/spectrum_repulsive.csv")
    );
}

#[test]
fn physical_parameters_scale_the_energies() {
    // alpha=4, mass=1/2, hbar=1, L=1: a = 1/(2*m*alpha*L) = 1/4 and
    // e0 = 1/(2*m*L^2) = 1, so the output matches --a 0.25 byte for byte.
    let canonical = run(&["spectrum", "--a", "0.25"]);
    let physical = run(&["spectrum", "--alpha", "4", "--mass", "0.5"]);
    assert_eq!(stdout_str(&canonical), stdout_str(&physical));

    // With mass=1 the same coupling arises from alpha=2, but e0 drops to 1/2:
    // identical xi column, energies exactly halved.
    let halved = run(&["spectrum", "--alpha", "2"]);
    assert_eq!(halved.status.code(), Some(0));
    let parse = |out: &std::process::Output| -> Vec<(String, f64, f64)> {
        stdout_str(out)
            .lines()
            .skip(2)
            .map(|line| {
                let mut cols = line.split(',');
                let parity = cols.next().unwrap().to_string();
                let xi: f64 = cols.next().unwrap().parse().unwrap();
                let energy: f64 = cols.next().unwrap().parse().unwrap();
                (parity, xi, energy)
            })
            .collect()
    };
    let full = parse(&canonical);
    let half = parse(&halved);
    assert_eq!(full.len(), half.len());
    for ((p_a, xi_a, e_a), (p_b, xi_b, e_b)) in full.iter().zip(&half) {
        assert_eq!(p_a, p_b);
        assert_eq!(xi_a, xi_b);
        assert!((e_a / 2.0 - e_b).abs() <= 1e-15 * e_a.abs());
    }

    // Doubling hbar changes both the coupling and the scale.
    let scaled = run(&["spectrum", "--alpha", "2", "--hbar", "2"]);
    assert_eq!(scaled.status.code(), Some(0));
    assert_ne!(stdout_str(&halved), stdout_str(&scaled));
}

#[test]
fn curves_golden_overlay() {
    let out = run(&[
        "curves", "--xi-max", "4", "--n", "5", "--a", "1.5", "--a", "0.25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_str(&out), include_str!("golden/curves_small.csv"));
}

#[test]
fn integrals_golden_default() {
    let out = run(&["integrals"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_str(&out),
        include_str!("golden/integrals_default.csv")
    );
}

#[test]
fn wavefn_golden_small_grid() {
    let out = run(&["wavefn", "--a", "0.5", "--samples", "5", "--x-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_str(&out), include_str!("golden/wavefn_small.csv"));
}

#[test]
fn limit_study_golden_small() {
    let out = run(&["limit-study", "--a", "0.5", "--theta", "0.4", "--theta", "0.2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_str(&out),
        include_str!("golden/limit_study_small.csv")
    );
}

#[test]
fn verify_is_deterministic_and_passes() {
    let first = run(&["verify", "--seed", "7"]);
    let second = run(&["verify", "--seed", "7"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "same seed, same bytes");

    let text = stdout_str(&first);
    assert!(text.starts_with("# schema: double-delta/verify v1\n"));
    // Header + 8 criteria, all passing.
    assert_eq!(text.lines().count(), 2 + 8);
    assert_eq!(text.matches(",pass,").count(), 8);
}

#[test]
fn json_outputs_are_well_formed() {
    let out = run(&["spectrum", "--a", "0.25", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(stdout_str(&out)).unwrap();
    assert_eq!(value["schema"], "double-delta/spectrum v1");
    assert_eq!(value["states"].as_array().unwrap().len(), 2);
    assert_eq!(value["states"][0]["parity"], "even");

    let out = run(&["verify", "--seed", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout_str(&out)).unwrap();
    assert_eq!(value["all_passed"], true);
    assert_eq!(value["report"]["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let out = run(&["spectrum", "--a", "0.25", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, include_str!("golden/spectrum_a_quarter.csv"));
}

#[test]
fn unwritable_output_path_exits_two() {
    let out = run(&[
        "spectrum",
        "--a",
        "0.25",
        "--out",
        "/nonexistent-dir/file.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("cannot write"));
}

#[test]
fn env_overrides_apply_and_reject_garbage() {
    let ok = bin()
        .args(["integrals"])
        .env("DOUBLE_DELTA_QUAD_RTOL", "1e-8")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));

    let bad = bin()
        .args(["integrals"])
        .env("DOUBLE_DELTA_QUAD_RTOL", "banana")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr_str(&bad).contains("DOUBLE_DELTA_QUAD_RTOL"));

    let bad_solver = bin()
        .args(["spectrum", "--a", "0.25"])
        .env("DOUBLE_DELTA_SOLVER_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(bad_solver.status.code(), Some(2));
}
