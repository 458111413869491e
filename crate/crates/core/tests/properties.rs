//! Property-based invariants: randomised inputs against the structural facts
//! the solver is supposed to guarantee (existence/count rules, residuals,
//! monotonicity, parity, decay, transform identities, table closed forms, and
//! the independent grid oracle).

use double_delta::eigen::{build_wavefn, PiecewiseWaveFn};
use double_delta::model::{Coupling, EnergyScale, Parity};
use double_delta::oracle::{grid_eigensolve, GridSpec};
use double_delta::quantize::{
    degeneracy_gap, solve_even, spectrum, xi_even_lambert, Branch, SolverSpec,
};
use double_delta::transform::{
    analytic_transform, inverse_reconstruct, parseval_residual, positive_energy_nonexistence,
    tabulated_integral, wavefn_transform, QuadratureSpec, TabulatedCase, TableCase,
};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Log-uniform coupling in [10^lo, 10^hi].
fn coupling_in(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi).prop_map(|u| 10f64.powf(u))
}

fn bound_states(a: f64) -> Vec<PiecewiseWaveFn> {
    let coupling = Coupling::new(a).expect("valid coupling");
    let spec = spectrum(coupling, EnergyScale::canonical(), &SolverSpec::default())
        .expect("solvable spectrum");
    spec.states
        .iter()
        .map(|s| build_wavefn(*s).expect("normalizable state"))
        .collect()
}

proptest! {
    #![proptest_config(config(64))]

    /// Every reported level satisfies its own quantization condition to
    /// 1e-11, the state count follows the coupling threshold, the even state
    /// is the ground state, and bisection agrees with the Lambert-W closed
    /// form.
    #[test]
    fn levels_satisfy_their_quantization_conditions(a in coupling_in(-2.0, 2.0)) {
        let coupling = Coupling::new(a).unwrap();
        let spec = spectrum(coupling, EnergyScale::canonical(), &SolverSpec::default()).unwrap();

        prop_assert_eq!(spec.count(), if a < 1.0 { 2 } else { 1 });
        for s in &spec.states {
            let residual = Branch(s.parity()).residual(a, s.xi()).abs();
            prop_assert!(residual <= 1e-11, "residual {residual:e} at a = {a}");
        }

        let even = spec.even().expect("even state always exists");
        let lambert = xi_even_lambert(a).unwrap();
        let agree = (even.xi() - lambert).abs() / even.xi().max(1.0);
        prop_assert!(agree <= 1e-10, "bisection vs Lambert {agree:e} at a = {a}");

        if let Some(odd) = spec.odd() {
            // Strict ordering holds mathematically, but deep wells push the
            // splitting below one ulp of xi, so allow a relative tie.
            prop_assert!(
                even.xi() >= odd.xi() - 1e-12 * even.xi(),
                "xi ordering inverted at a = {a}"
            );
            prop_assert!(
                even.energy() <= odd.energy() + 1e-9 * even.energy().abs(),
                "even state not the ground state at a = {a}"
            );
        }
    }

    /// Repulsive wells bind nothing, at any strength.
    #[test]
    fn repulsive_couplings_bind_nothing(mag in coupling_in(-2.0, 2.0)) {
        let coupling = Coupling::new(-mag).unwrap();
        let spec = spectrum(coupling, EnergyScale::canonical(), &SolverSpec::default()).unwrap();
        prop_assert_eq!(spec.count(), 0);
    }

    /// The even decay parameter is strictly decreasing in the coupling:
    /// weaker wells (larger a) hold the state more loosely.
    #[test]
    fn even_decay_parameter_decreases_with_coupling(
        u1 in -2.0..2.0f64,
        u2 in -2.0..2.0f64,
    ) {
        prop_assume!((u1 - u2).abs() > 1e-9);
        let (lo, hi) = if u1 < u2 { (u1, u2) } else { (u2, u1) };
        let spec = SolverSpec::default();
        let xi_lo = solve_even(Coupling::new(10f64.powf(lo)).unwrap(), &spec).unwrap();
        let xi_hi = solve_even(Coupling::new(10f64.powf(hi)).unwrap(), &spec).unwrap();
        prop_assert!(xi_lo > xi_hi, "xi_even not decreasing: {xi_lo} vs {xi_hi}");
    }

    /// The even/odd splitting is non-negative wherever both states exist and
    /// it shrinks as the well deepens (the degenerate-pair limit).
    #[test]
    fn degeneracy_gap_shrinks_with_depth(
        u1 in -3.0..-0.301f64,
        u2 in -3.0..-0.301f64,
    ) {
        prop_assume!((u1 - u2).abs() > 1e-6);
        let (lo, hi) = if u1 < u2 { (u1, u2) } else { (u2, u1) };
        let gap_deep = degeneracy_gap(10f64.powf(lo)).unwrap();
        let gap_shallow = degeneracy_gap(10f64.powf(hi)).unwrap();
        prop_assert!(gap_deep >= 0.0 && gap_shallow >= 0.0);
        prop_assert!(
            gap_deep <= gap_shallow,
            "gap grew as the well deepened: {gap_deep:e} vs {gap_shallow:e}"
        );
    }
}

proptest! {
    #![proptest_config(config(24))]

    /// Normalized states integrate to one: the closed-form half-line norm is
    /// exactly 1/2 per side, the numeric norm agrees, and amplitude scaling
    /// scales the norm quadratically.
    #[test]
    fn normalization_is_exact_and_scales_quadratically(
        a in coupling_in(-1.5, 1.5),
        factor in 0.2..3.0f64,
    ) {
        let quad = QuadratureSpec::default();
        for w in bound_states(a) {
            let half = w.half_axis_norm_closed();
            prop_assert!((half - 0.5).abs() <= 1e-12, "half-axis norm {half} at a = {a}");
            let numeric = w.numeric_norm(&quad).unwrap();
            prop_assert!((numeric - 1.0).abs() <= 1e-9, "numeric norm {numeric} at a = {a}");
            let scaled = w.scaled(factor).half_axis_norm_closed();
            prop_assert!(
                (scaled - factor * factor * half).abs() <= 1e-12 * factor * factor,
                "scaling broke the norm at a = {a}"
            );
        }
    }

    /// Eigenfunctions have definite parity, peak at the wells, and decay as
    /// a pure exponential outside them.
    #[test]
    fn eigenfunctions_have_definite_parity_and_decay(
        a in coupling_in(-1.5, 1.5),
        x in 0.0..6.0f64,
    ) {
        for w in bound_states(a) {
            let sign = w.parity().sign();
            let here = w.evaluate(x);
            let mirrored = w.evaluate(-x);
            prop_assert!(
                (mirrored - sign * here).abs() <= 1e-14 * here.abs().max(1.0),
                "parity violated at x = {x}, a = {a}"
            );

            let edge = w.edge_value();
            prop_assert!(
                here.abs() <= edge * (1.0 + 1e-12),
                "|phi({x})| = {} exceeds the well-site peak {edge} at a = {a}",
                here.abs()
            );
            if x >= 1.0 {
                let tail = edge * (-w.xi() * (x - 1.0)).exp();
                prop_assert!(
                    (here.abs() - tail).abs() <= 1e-13 * tail.max(1e-300),
                    "outer tail is not a pure exponential at x = {x}, a = {a}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    /// The adaptive quadrature reproduces the closed-form sine/cosine
    /// transform of each bound state.
    #[test]
    fn numeric_transform_matches_closed_form(
        a in coupling_in(-1.0, 1.0),
        k in 0.05..15.0f64,
    ) {
        let quad = QuadratureSpec::default();
        for w in bound_states(a) {
            let numeric = wavefn_transform(&w, k, &quad).unwrap();
            let closed = analytic_transform(&w).eval(k);
            prop_assert!(
                (numeric - closed).abs() <= 1e-8,
                "transform mismatch {:e} at a = {a}, k = {k}",
                (numeric - closed).abs()
            );
        }
    }

    /// Random tabulated trig/rational integrals match their closed forms;
    /// principal-value cases agree between the two independent pole
    /// strategies.
    #[test]
    fn tabulated_integrals_match_closed_forms(
        idx in 0usize..TableCase::ALL.len(),
        c in 0.3..2.5f64,
        d in 0.3..2.5f64,
        x in 0.0..4.0f64,
    ) {
        let case = TabulatedCase::new(TableCase::ALL[idx], c, d, x).unwrap();
        let result = tabulated_integral(&case, &QuadratureSpec::default()).unwrap();
        if let Some((excision, subtraction)) = result.pv_methods {
            prop_assert!(
                result.abs_diff <= 1e-5,
                "PV case off by {:e}", result.abs_diff
            );
            prop_assert!(
                (excision - subtraction).abs() <= 1e-6,
                "pole strategies disagree by {:e}",
                (excision - subtraction).abs()
            );
        } else {
            prop_assert!(
                result.abs_diff <= 1e-7,
                "direct case off by {:e}", result.abs_diff
            );
        }
    }
}

proptest! {
    #![proptest_config(config(8))]

    /// Inverting the closed-form transform returns the eigenfunction,
    /// including the parity fold for negative positions.
    #[test]
    fn inverse_transform_returns_the_eigenfunction(
        a in coupling_in(-0.9, 0.5),
        x in -3.5..3.5f64,
    ) {
        let quad = QuadratureSpec::default();
        for w in bound_states(a) {
            let rebuilt = inverse_reconstruct(&analytic_transform(&w), x, &quad).unwrap();
            let direct = w.evaluate(x);
            prop_assert!(
                (rebuilt - direct).abs() <= 1e-7,
                "inversion off by {:e} at x = {x}, a = {a}",
                (rebuilt - direct).abs()
            );
        }
    }

    /// Parseval: the momentum-side norm equals the position-side norm.
    #[test]
    fn parseval_identity_holds(a in coupling_in(-0.9, 0.5)) {
        let quad = QuadratureSpec::default();
        for w in bound_states(a) {
            let residual = parseval_residual(&w, &analytic_transform(&w), &quad).unwrap();
            prop_assert!(residual <= 1e-8, "Parseval residual {residual:e} at a = {a}");
        }
    }

    /// The independent finite-difference grid reproduces the closed-form
    /// spectrum (energies to 0.1%, parities by mirror symmetry). The box
    /// radius scales with the loosest state's decay length so the Dirichlet
    /// wall stays negligible even near the two-state threshold.
    #[test]
    fn grid_oracle_confirms_the_spectrum(a in 0.15..0.9f64) {
        let coupling = Coupling::new(a).unwrap();
        let spec = spectrum(coupling, EnergyScale::canonical(), &SolverSpec::default()).unwrap();
        let xi_min = spec
            .states
            .iter()
            .map(|s| s.xi())
            .fold(f64::INFINITY, f64::min);
        let radius = (1.0 + 14.0 / xi_min).ceil().max(8.0);
        let grid = GridSpec {
            box_radius: radius,
            n: (512.0 * radius) as usize - 1,
        };
        let levels = grid_eigensolve(coupling, &grid, spec.count()).unwrap();
        prop_assert_eq!(levels.len(), spec.count());
        for (level, state) in levels.iter().zip(&spec.states) {
            let rel = (level.energy - state.energy()).abs() / state.energy().abs();
            prop_assert!(rel <= 1e-3, "grid energy off by {rel:e} at a = {a}");
            let expected = match state.parity() {
                Parity::Even => 1.0,
                Parity::Odd => -1.0,
            };
            prop_assert!(
                level.mirror_score * expected > 0.99,
                "grid parity mismatch at a = {a}"
            );
        }
    }
}

proptest! {
    #![proptest_config(config(4))]

    /// Positive-energy candidates never become normalizable: their
    /// oscillatory norm content persists across window doublings while a
    /// genuine bound state's tail dies off.
    #[test]
    fn positive_energy_candidates_are_rejected(
        a in coupling_in(-0.6, 0.3),
        kappa in 0.25..10.0f64,
    ) {
        let report =
            positive_energy_nonexistence(Coupling::new(a).unwrap(), kappa, &QuadratureSpec::default())
                .unwrap();
        prop_assert!(report.oscillation_persists(), "oscillation died at a = {a}, kappa = {kappa}");
        prop_assert!(report.decay_certified(), "bound reference failed to decay at a = {a}");
    }
}
