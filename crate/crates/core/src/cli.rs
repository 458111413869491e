//! Command-line front end.
//!
//! Subcommands: `spectrum`, `wavefn`, `curves`, `verify`, `limit-study`,
//! `integrals`. Output goes to stdout (or `--out <path>`) as CSV (default)
//! or JSON (`--format json`). CSV starts with a versioned
//! `# schema: double-delta/<command> v1` line and prints floats in shortest
//! round-trip form, so fixed configurations produce byte-identical files.
//!
//! Exit codes: 0 on success (including legitimately empty spectra),
//! 1 when a requested verification/quadrature fails to certify,
//! 2 on invalid usage or invalid input (including bad env overrides and
//! unwritable output paths).
//!
//! Optional environment overrides:
//! * `DOUBLE_DELTA_QUAD_RTOL` / `DOUBLE_DELTA_QUAD_ATOL` — relative /
//!   absolute quadrature tolerances (used by `integrals`).
//! * `DOUBLE_DELTA_SOLVER_TOL` — root-residual tolerance for the spectrum
//!   solvers (used by `spectrum`, `wavefn`, `curves`).

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::eigen::build_wavefn;
use crate::model::{Coupling, EnergyScale, Parity, PhysicalParams};
use crate::oracle::{delta_limit_study, OracleError};
use crate::quantize::{quantization_curves, spectrum, SolveError, SolverSpec};
use crate::transform::{tabulated_integral, QuadratureSpec, TableCase, TabulatedCase};
use crate::verify::run_all;

const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Parser)]
#[command(
    name = "double-delta",
    version,
    about = "Bound states of the symmetric double delta well: spectra, wavefunctions, \
             quantization curves, integral tables, and self-verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the bound spectrum at one coupling
    Spectrum(SpectrumCmd),
    /// Sample the normalised bound-state wavefunctions
    Wavefn(WavefnCmd),
    /// Tabulate the quantization curves and coupling lines (graphical solution)
    Curves(CurvesCmd),
    /// Run the full self-verification suite
    Verify(VerifyCmd),
    /// Square-well regularisation convergence study
    #[command(name = "limit-study")]
    LimitStudy(LimitStudyCmd),
    /// Evaluate the tabulated trig-pair integrals next to their closed forms
    Integrals(IntegralsCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Well parameters: the dimensionless coupling directly, or the physical
/// constants it is derived from (mutually exclusive).
#[derive(Debug, Args)]
struct WellArgs {
    /// Dimensionless coupling a = hbar^2 / (2 m alpha L)
    #[arg(long, conflicts_with_all = ["alpha", "mass", "hbar", "halfsep"], allow_hyphen_values = true)]
    a: Option<f64>,
    /// Delta strength alpha (physical mode; energies then come out in the
    /// matching physical units)
    #[arg(long)]
    alpha: Option<f64>,
    /// Particle mass (physical mode)
    #[arg(long, default_value_t = 1.0, requires = "alpha")]
    mass: f64,
    /// Reduced Planck constant (physical mode)
    #[arg(long, default_value_t = 1.0, requires = "alpha")]
    hbar: f64,
    /// Half separation L between the wells (physical mode)
    #[arg(long, default_value_t = 1.0, requires = "alpha")]
    halfsep: f64,
}

impl WellArgs {
    fn resolve(&self) -> Result<(Coupling, EnergyScale), CliFailure> {
        match (self.a, self.alpha) {
            (Some(a), None) => Ok((
                Coupling::new(a).map_err(CliFailure::input)?,
                EnergyScale::canonical(),
            )),
            (None, Some(alpha)) => {
                let params = PhysicalParams::new(self.hbar, self.mass, alpha, self.halfsep)
                    .map_err(CliFailure::input)?;
                Ok((params.coupling(), params.energy_scale()))
            }
            (None, None) => Err(CliFailure::usage(
                "provide either --a or the physical parameters via --alpha [--mass --hbar --halfsep]",
            )),
            (Some(_), Some(_)) => unreachable!("clap rejects --a together with --alpha"),
        }
    }
}

#[derive(Debug, Args)]
struct SpectrumCmd {
    #[command(flatten)]
    well: WellArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct WavefnCmd {
    #[command(flatten)]
    well: WellArgs,
    /// Samples span [-x_max, x_max], in units of the half separation
    #[arg(long = "x-max", default_value_t = 4.0, allow_hyphen_values = true)]
    x_max: f64,
    /// Number of sample positions per state (odd keeps x = 0 on the grid)
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CurvesCmd {
    /// Upper end of the xi grid
    #[arg(long = "xi-max", default_value_t = 4.0)]
    xi_max: f64,
    /// Number of xi grid points
    #[arg(long, default_value_t = 401)]
    n: usize,
    /// Coupling whose straight line 2 a xi to overlay (repeatable)
    #[arg(long = "a", allow_hyphen_values = true)]
    a: Vec<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyCmd {
    /// Seed for the randomised criteria
    #[arg(long, default_value_t = 2026)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct LimitStudyCmd {
    #[command(flatten)]
    well: WellArgs,
    /// Regularisation width in units of the half separation (repeatable)
    #[arg(long = "theta", default_values_t = [0.4, 0.2, 0.1, 0.05, 0.025])]
    thetas: Vec<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct IntegralsCmd {
    /// First trig frequency
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c: f64,
    /// Denominator constant (pole position for the principal-value families)
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    d: f64,
    /// Second trig frequency
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    x: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// A command failure carrying the process exit code.
#[derive(Debug)]
struct CliFailure {
    code: i32,
    message: String,
}

impl CliFailure {
    fn usage(message: impl Into<String>) -> Self {
        CliFailure {
            code: 2,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        CliFailure {
            code: 1,
            message: message.into(),
        }
    }

    fn input<E: std::fmt::Display>(e: E) -> Self {
        CliFailure::usage(e.to_string())
    }
}

fn solve_failure(e: SolveError) -> CliFailure {
    match e {
        SolveError::InvalidInput { .. } | SolveError::InvalidSpec { .. } => CliFailure::input(e),
        _ => CliFailure::failed(e.to_string()),
    }
}

fn oracle_failure(e: OracleError) -> CliFailure {
    match e {
        OracleError::Numerical { .. } => CliFailure::failed(e.to_string()),
        _ => CliFailure::input(e),
    }
}

/// Rendered command output plus the exit code to report.
#[derive(Debug)]
struct Rendered {
    csv: String,
    json: serde_json::Value,
    exit_code: i32,
}

fn schema(command: &str) -> String {
    format!("double-delta/{command} {SCHEMA_VERSION}")
}

/// Shortest round-trip decimal form (what `{}` prints for f64).
fn fmt_float(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn csv_table(command: &str, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = format!("# schema: {}\n{}\n", schema(command), header.join(","));
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

// ---------------------------------------------------------------------------
// Environment overrides
// ---------------------------------------------------------------------------

fn parse_env_f64(name: &str, raw: Option<String>) -> Result<Option<f64>, CliFailure> {
    match raw {
        None => Ok(None),
        Some(s) => s
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| CliFailure::usage(format!("{name} must be a number, got {s:?}"))),
    }
}

fn quad_spec_from(lookup: impl Fn(&str) -> Option<String>) -> Result<QuadratureSpec, CliFailure> {
    let mut spec = QuadratureSpec::default();
    if let Some(v) = parse_env_f64("DOUBLE_DELTA_QUAD_RTOL", lookup("DOUBLE_DELTA_QUAD_RTOL"))? {
        spec.rel_tol = v;
    }
    if let Some(v) = parse_env_f64("DOUBLE_DELTA_QUAD_ATOL", lookup("DOUBLE_DELTA_QUAD_ATOL"))? {
        spec.abs_tol = v;
    }
    spec.validate().map_err(CliFailure::input)?;
    Ok(spec)
}

fn solver_spec_from(lookup: impl Fn(&str) -> Option<String>) -> Result<SolverSpec, CliFailure> {
    let mut spec = SolverSpec::default();
    if let Some(v) = parse_env_f64("DOUBLE_DELTA_SOLVER_TOL", lookup("DOUBLE_DELTA_SOLVER_TOL"))? {
        spec.abs_tol = v;
    }
    spec.validate().map_err(CliFailure::input)?;
    Ok(spec)
}

fn env_lookup(name: &str) -> Option<String> {
    std::env::var(name).ok()
}

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

fn run_spectrum(cmd: &SpectrumCmd) -> Result<Rendered, CliFailure> {
    let (coupling, scale) = cmd.well.resolve()?;
    let solver = solver_spec_from(env_lookup)?;
    let spec = spectrum(coupling, scale, &solver).map_err(solve_failure)?;

    let states: Vec<_> = spec.even().into_iter().chain(spec.odd()).collect();
    let rows: Vec<Vec<String>> = states
        .iter()
        .map(|s| {
            vec![
                parity_name(s.parity()).to_string(),
                fmt_float(s.xi()),
                fmt_float(s.energy()),
                fmt_float(s.quantization_residual()),
            ]
        })
        .collect();
    let json_states: Vec<_> = states
        .iter()
        .map(|s| {
            json!({
                "parity": parity_name(s.parity()),
                "xi": s.xi(),
                "energy": s.energy(),
                "residual": s.quantization_residual(),
            })
        })
        .collect();
    Ok(Rendered {
        csv: csv_table("spectrum", &["parity", "xi", "energy", "residual"], &rows),
        json: json!({
            "schema": schema("spectrum"),
            "coupling": coupling.value(),
            "e0": scale.e0(),
            "states": json_states,
        }),
        exit_code: 0,
    })
}

fn run_wavefn(cmd: &WavefnCmd) -> Result<Rendered, CliFailure> {
    if !(cmd.x_max.is_finite() && cmd.x_max > 0.0) {
        return Err(CliFailure::usage(format!(
            "--x-max must be finite and positive, got {}",
            cmd.x_max
        )));
    }
    if cmd.samples < 2 || cmd.samples > 1_000_000 {
        return Err(CliFailure::usage(format!(
            "--samples must lie in [2, 1e6], got {}",
            cmd.samples
        )));
    }
    let (coupling, scale) = cmd.well.resolve()?;
    let solver = solver_spec_from(env_lookup)?;
    let spec = spectrum(coupling, scale, &solver).map_err(solve_failure)?;

    let mut rows = Vec::new();
    let mut json_states = Vec::new();
    for state in spec.even().into_iter().chain(spec.odd()) {
        let w = build_wavefn(*state).map_err(|e| CliFailure::failed(e.to_string()))?;
        let mut xs = Vec::with_capacity(cmd.samples);
        let mut phis = Vec::with_capacity(cmd.samples);
        for j in 0..cmd.samples {
            let x = -cmd.x_max + 2.0 * cmd.x_max * j as f64 / (cmd.samples - 1) as f64;
            let phi = w.evaluate(x);
            rows.push(vec![
                parity_name(state.parity()).to_string(),
                fmt_float(x),
                fmt_float(phi),
            ]);
            xs.push(x);
            phis.push(phi);
        }
        json_states.push(json!({
            "parity": parity_name(state.parity()),
            "xi": state.xi(),
            "x": xs,
            "phi": phis,
        }));
    }
    Ok(Rendered {
        csv: csv_table("wavefn", &["parity", "x", "phi"], &rows),
        json: json!({
            "schema": schema("wavefn"),
            "coupling": coupling.value(),
            "states": json_states,
        }),
        exit_code: 0,
    })
}

fn run_curves(cmd: &CurvesCmd) -> Result<Rendered, CliFailure> {
    let table = quantization_curves(cmd.xi_max, cmd.n, &cmd.a).map_err(solve_failure)?;
    let mut header: Vec<String> = vec!["xi".into(), "even_rhs".into(), "odd_rhs".into()];
    for (a, _) in &table.lines {
        header.push(format!("line(a={})", fmt_float(*a)));
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = (0..table.xi.len())
        .map(|i| {
            let mut row = vec![
                fmt_float(table.xi[i]),
                fmt_float(table.even_rhs[i]),
                fmt_float(table.odd_rhs[i]),
            ];
            for (_, line) in &table.lines {
                row.push(fmt_float(line[i]));
            }
            row
        })
        .collect();
    Ok(Rendered {
        csv: csv_table("curves", &header_refs, &rows),
        json: json!({
            "schema": schema("curves"),
            "table": table,
        }),
        exit_code: 0,
    })
}

fn run_verify(cmd: &VerifyCmd) -> Result<Rendered, CliFailure> {
    let report = run_all(cmd.seed);
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.to_string(),
                if c.passed { "pass" } else { "fail" }.to_string(),
                fmt_float(c.worst_ratio),
                c.detail.clone(),
            ]
        })
        .collect();
    let exit_code = if report.all_passed() { 0 } else { 1 };
    Ok(Rendered {
        csv: csv_table(
            "verify",
            &["criterion", "status", "worst_ratio", "detail"],
            &rows,
        ),
        json: json!({
            "schema": schema("verify"),
            "report": report,
            "all_passed": report.all_passed(),
        }),
        exit_code,
    })
}

fn run_limit_study(cmd: &LimitStudyCmd) -> Result<Rendered, CliFailure> {
    let (coupling, _) = cmd.well.resolve()?;
    let rows_data = delta_limit_study(coupling, &cmd.thetas).map_err(oracle_failure)?;
    let rows: Vec<Vec<String>> = rows_data
        .iter()
        .map(|r| {
            vec![
                fmt_float(r.theta),
                fmt_float(r.v0),
                fmt_opt(r.even_energy),
                fmt_opt(r.odd_energy),
                fmt_float(r.even_reference),
                fmt_opt(r.odd_reference),
                fmt_opt(r.even_gap),
                fmt_opt(r.odd_gap),
            ]
        })
        .collect();
    Ok(Rendered {
        csv: csv_table(
            "limit-study",
            &[
                "theta",
                "v0",
                "even_energy",
                "odd_energy",
                "even_reference",
                "odd_reference",
                "even_gap",
                "odd_gap",
            ],
            &rows,
        ),
        json: json!({
            "schema": schema("limit-study"),
            "coupling": coupling.value(),
            "rows": rows_data,
        }),
        exit_code: 0,
    })
}

fn run_integrals(cmd: &IntegralsCmd) -> Result<Rendered, CliFailure> {
    let quad = quad_spec_from(env_lookup)?;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for which in TableCase::ALL {
        let case = TabulatedCase::new(which, cmd.c, cmd.d, cmd.x).map_err(CliFailure::input)?;
        let result = tabulated_integral(&case, &quad)
            .map_err(|e| CliFailure::failed(format!("{which}: {e}")))?;
        let (exc, sub) = match result.pv_methods {
            Some((e, s)) => (Some(e), Some(s)),
            None => (None, None),
        };
        rows.push(vec![
            which.to_string(),
            fmt_float(cmd.c),
            fmt_float(cmd.d),
            fmt_float(cmd.x),
            fmt_float(result.numeric),
            fmt_float(result.closed_form),
            fmt_float(result.abs_diff),
            fmt_opt(exc),
            fmt_opt(sub),
        ]);
        json_rows.push(json!({
            "case": which.to_string(),
            "c": cmd.c,
            "d": cmd.d,
            "x": cmd.x,
            "numeric": result.numeric,
            "closed_form": result.closed_form,
            "abs_diff": result.abs_diff,
            "pv_excision": exc,
            "pv_subtraction": sub,
        }));
    }
    Ok(Rendered {
        csv: csv_table(
            "integrals",
            &[
                "case",
                "c",
                "d",
                "x",
                "numeric",
                "closed_form",
                "abs_diff",
                "pv_excision",
                "pv_subtraction",
            ],
            &rows,
        ),
        json: json!({
            "schema": schema("integrals"),
            "rows": json_rows,
        }),
        exit_code: 0,
    })
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

fn render(cli: &Cli) -> Result<Rendered, CliFailure> {
    match &cli.command {
        Command::Spectrum(c) => run_spectrum(c),
        Command::Wavefn(c) => run_wavefn(c),
        Command::Curves(c) => run_curves(c),
        Command::Verify(c) => run_verify(c),
        Command::LimitStudy(c) => run_limit_study(c),
        Command::Integrals(c) => run_integrals(c),
    }
}

fn output_args(cli: &Cli) -> &OutputArgs {
    match &cli.command {
        Command::Spectrum(c) => &c.output,
        Command::Wavefn(c) => &c.output,
        Command::Curves(c) => &c.output,
        Command::Verify(c) => &c.output,
        Command::LimitStudy(c) => &c.output,
        Command::Integrals(c) => &c.output,
    }
}

fn emit(output: &OutputArgs, rendered: &Rendered) -> Result<(), CliFailure> {
    let text = match output.format {
        Format::Csv => rendered.csv.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rendered.json)
                .map_err(|e| CliFailure::failed(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| {
            CliFailure::usage(format!("cannot write {}: {e}", path.display()))
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliFailure::failed(format!("cannot write to stdout: {e}"))),
    }
}

/// Parse `std::env::args`, run the command, report the exit code.
pub fn run_from_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Prints help/version to stdout (exit 0), usage errors to
            // stderr (exit 2).
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match render(&cli) {
        Ok(rendered) => match emit(output_args(&cli), &rendered) {
            Ok(()) => rendered.exit_code,
            Err(f) => {
                eprintln!("error: {}", f.message);
                f.code
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
