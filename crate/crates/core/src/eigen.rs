//! Bound-state eigenfunctions in position space.
//!
//! In canonical units (lengths in L, the half-separation) a bound state with
//! decay constant ξ has the piecewise form
//!
//! * even:  `φ(x) = amp·cosh(ξx)` inside `|x| ≤ 1`,
//!   `φ(x) = edge·e^{−ξ(|x|−1)}` outside;
//! * odd:   `φ(x) = (amp/ξ)·sinh(ξx)` inside,
//!   `φ(x) = sign(x)·edge·e^{−ξ(|x|−1)}` outside;
//!
//! where `edge = φ(1)` and `amp` is the centre value (even) or centre slope
//! (odd). Construction fixes `edge` from the closed-form unit-norm condition
//!
//! * even: `edge² = ξ / (ξ·sech²ξ + tanh ξ + 1)`
//! * odd:  `edge² = ξ / (coth ξ + 1 − ξ·csch²ξ)`
//!
//! evaluated in overflow-safe form (plain cosh/sinh would overflow beyond
//! ξ ≈ 350, and the odd denominator loses digits to cancellation for small
//! ξ unless rearranged through `sinh 2ξ − 2ξ`). Evaluation uses the ratio
//! forms `cosh(ξx)/cosh ξ` and `sinh(ξx)/sinh ξ`, which stay inside [−1, 1]
//! for any ξ.

use crate::model::{BoundState, ModelError, Parity};
use crate::transform::{quad, QuadError, QuadratureSpec};
use serde::Serialize;
use thiserror::Error;

/// Errors from eigenfunction construction and checks.
#[derive(Debug, Error)]
pub enum EigenError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// `sinh u − u` without cancellation for small `u`.
fn sinh_minus_arg(u: f64) -> f64 {
    if u.abs() < 0.5 {
        // Nested odd series: (2n+1)!/(2n−1)! steps are 20, 42, 72, 110.
        let u2 = u * u;
        u2 * u / 6.0
            * (1.0 + u2 / 20.0 * (1.0 + u2 / 42.0 * (1.0 + u2 / 72.0 * (1.0 + u2 / 110.0))))
    } else {
        u.sinh() - u
    }
}

/// The unit-norm denominator: `2ξ · ∫₀^∞ (φ/edge)² dx`.
fn norm_denominator(parity: Parity, xi: f64) -> f64 {
    match parity {
        Parity::Even => {
            // ξ·sech²ξ + tanh ξ + 1 with sech via decaying exponentials.
            let em = (-xi).exp();
            let sech = 2.0 * em / (1.0 + em * em);
            xi * sech * sech + xi.tanh() + 1.0
        }
        Parity::Odd => {
            // coth ξ + 1 − ξ·csch²ξ = (sinh 2ξ − 2ξ)/(2 sinh²ξ) + 1.
            if xi <= 10.0 {
                let s = xi.sinh();
                sinh_minus_arg(2.0 * xi) / (2.0 * s * s) + 1.0
            } else {
                let t = (-2.0 * xi).exp();
                let one_minus = 1.0 - t;
                2.0 + 2.0 * t / one_minus - 4.0 * xi * t / (one_minus * one_minus)
            }
        }
    }
}

/// A normalised piecewise eigenfunction of the double-well model.
#[derive(Debug, Clone, Serialize)]
pub struct PiecewiseWaveFn {
    state: BoundState,
    /// Centre value φ(0) (even) or centre slope φ′(0) (odd).
    amp: f64,
    /// Value at the well position, φ(1).
    edge: f64,
}

/// Build the unit-norm eigenfunction of an on-shell bound state.
pub fn build_wavefn(state: BoundState) -> Result<PiecewiseWaveFn, EigenError> {
    let residual = state.quantization_residual();
    if residual.is_nan() || residual.abs() > BoundState::ONSHELL_TOL {
        return Err(EigenError::Model(ModelError::OffShell {
            parity: state.parity(),
            xi: state.xi(),
            residual,
            tol: BoundState::ONSHELL_TOL,
        }));
    }
    Ok(build_wavefn_unchecked(state))
}

/// Build the piecewise profile without the on-shell gate. Off-shell inputs
/// yield a perfectly normalised function whose derivative jump at the wells
/// is *wrong* — useful as a negative control for `match_report`.
pub fn build_wavefn_unchecked(state: BoundState) -> PiecewiseWaveFn {
    let xi = state.xi();
    let em = (-xi).exp();
    let edge = (xi / norm_denominator(state.parity(), xi)).sqrt();
    let amp = match state.parity() {
        // amp = edge · sech ξ
        Parity::Even => edge * 2.0 * em / (1.0 + em * em),
        // amp = edge · ξ · csch ξ
        Parity::Odd => edge * xi * 2.0 * em / -(-2.0 * xi).exp_m1(),
    };
    PiecewiseWaveFn { state, amp, edge }
}

/// One-sided derivative matching at the well, plus the centre-link identity
/// tying the amplitude at the origin to the value at the well.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MatchReport {
    /// |φ(1⁻) − φ(1⁺)|.
    pub continuity_err: f64,
    /// |Δφ′(1) + φ(1)/a| — the derivative discontinuity a delta well of
    /// coupling parameter a must produce.
    pub jump_err: f64,
    /// Even: |φ(0) − φ(1)e^{−ξ}/(aξ)|;  odd: |φ′(0) − φ(1)e^{−ξ}/a|.
    pub center_link_err: f64,
}

impl MatchReport {
    pub fn worst(&self) -> f64 {
        self.continuity_err
            .max(self.jump_err)
            .max(self.center_link_err)
    }
}

impl PiecewiseWaveFn {
    pub fn state(&self) -> &BoundState {
        &self.state
    }

    pub fn xi(&self) -> f64 {
        self.state.xi()
    }

    pub fn parity(&self) -> Parity {
        self.state.parity()
    }

    /// Centre value φ(0) for even states, centre slope φ′(0) for odd ones.
    pub fn amp(&self) -> f64 {
        self.amp
    }

    /// φ(1), the value at the well position.
    pub fn edge_value(&self) -> f64 {
        self.edge
    }

    /// Evaluate φ(x); x in units of the half-separation, either sign.
    pub fn evaluate(&self, x: f64) -> f64 {
        let xi = self.xi();
        let t = x.abs();
        match self.parity() {
            Parity::Even => {
                if t <= 1.0 {
                    // cosh(ξt)/cosh ξ, overflow-free.
                    let ratio = (-xi * (1.0 - t)).exp() * (1.0 + (-2.0 * xi * t).exp())
                        / (1.0 + (-2.0 * xi).exp());
                    self.edge * ratio
                } else {
                    self.edge * (-xi * (t - 1.0)).exp()
                }
            }
            Parity::Odd => {
                let sign = if x < 0.0 { -1.0 } else { 1.0 };
                if t <= 1.0 {
                    // sinh(ξt)/sinh ξ via expm1 (exact through ξt → 0).
                    let ratio = (-xi * (1.0 - t)).exp() * (-2.0 * xi * t).exp_m1()
                        / (-2.0 * xi).exp_m1();
                    sign * self.edge * ratio
                } else {
                    sign * self.edge * (-xi * (t - 1.0)).exp()
                }
            }
        }
    }

    /// One-sided derivatives `(φ′(1⁻), φ′(1⁺))` at the positive well.
    pub fn edge_derivatives(&self) -> (f64, f64) {
        let xi = self.xi();
        let inner = match self.parity() {
            Parity::Even => self.edge * xi * xi.tanh(),
            Parity::Odd => {
                // coth ξ = (1 + e^{−2ξ}) / (1 − e^{−2ξ})
                let t = (-2.0 * xi).exp();
                self.edge * xi * (1.0 + t) / -(-2.0 * xi).exp_m1().min(-f64::MIN_POSITIVE)
            }
        };
        (inner, -xi * self.edge)
    }

    /// Residuals of the matching conditions at the well.
    pub fn match_report(&self) -> MatchReport {
        let xi = self.xi();
        let a = self.state.coupling().value();
        let continuity_err = {
            let inside = self.evaluate(1.0);
            let outside = self.edge; // tail form at t = 1
            (inside - outside).abs()
        };
        let (inner, outer) = self.edge_derivatives();
        let jump_err = ((outer - inner) + self.edge / a).abs();
        let center_link_err = match self.parity() {
            Parity::Even => (self.amp - self.edge * (-xi).exp() / (a * xi)).abs(),
            Parity::Odd => (self.amp - self.edge * (-xi).exp() / a).abs(),
        };
        MatchReport {
            continuity_err,
            jump_err,
            center_link_err,
        }
    }

    /// Closed-form `∫₀^∞ φ² dx` (= ½ for a unit-norm state).
    pub fn half_axis_norm_closed(&self) -> f64 {
        let xi = self.xi();
        self.edge * self.edge * norm_denominator(self.parity(), xi) / (2.0 * xi)
    }

    /// Full-axis norm `∫ φ² dx` by adaptive quadrature (interior panel plus
    /// an exponential tail truncated 40 decay lengths out).
    pub fn numeric_norm(&self, spec: &QuadratureSpec) -> Result<f64, EigenError> {
        spec.validate()?;
        let density = |x: f64| {
            let v = self.evaluate(x);
            v * v
        };
        let interior = quad::adaptive(&density, 0.0, 1.0, &[], spec);
        let x_max = 1.0 + 40.0 / self.xi();
        let tail = quad::adaptive(&density, 1.0, x_max, &[], spec);
        let total = interior.add(tail).scale(2.0);
        if !total.value.is_finite() {
            return Err(EigenError::Quad(QuadError::NonFinite));
        }
        let required = spec.abs_tol.max(spec.rel_tol * total.value.abs()) * 16.0;
        if total.err <= required {
            Ok(total.value)
        } else {
            Err(EigenError::Quad(QuadError::Tolerance {
                value: total.value,
                err: total.err,
                required,
            }))
        }
    }

    /// Rescale the profile by a constant factor (breaks unit normalisation;
    /// intended for negative controls in norm and Parseval checks).
    #[must_use]
    pub fn scaled(&self, factor: f64) -> Self {
        PiecewiseWaveFn {
            state: self.state,
            amp: self.amp * factor,
            edge: self.edge * factor,
        }
    }
}
