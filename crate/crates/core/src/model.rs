//! Domain types and the reduction from physical constants to the one
//! dimensionless coupling that controls the double-delta well.
//!
//! Sign convention: the potential is written `V(x) = -alpha [delta(x+L) +
//! delta(x-L)]` with the minus sign explicit, so `alpha > 0` (equivalently
//! `a > 0`) is the attractive case and the only one with bound states.
//! Negative couplings are representable — they model the repulsive barrier
//! pair and produce an empty spectrum — but `alpha = 0` is rejected outright
//! because `a = hbar^2/(2 m alpha L)` is undefined there.

use thiserror::Error;

/// Errors from constructing or validating domain values.
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("{name} must be {constraint}, got {value}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("{parity} state with xi = {xi} is off shell: quantization residual {residual:e} exceeds {tol:e}")]
    OffShell {
        parity: Parity,
        xi: f64,
        residual: f64,
        tol: f64,
    },
}

fn require_finite(name: &'static str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ModelError::NonFinite { name, value })
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<f64, ModelError> {
    require_finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError::OutOfRange {
            name,
            value,
            constraint: "positive",
        })
    }
}

/// Parity sector of a state of the symmetric well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// +1 for even, -1 for odd; the eigenvalue of the reflection x -> -x.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// The dimensionless well strength `a = hbar^2 / (2 m alpha L)`.
///
/// Finite and nonzero; `a > 0` is attractive. Small `a` means strong wells
/// (deep states, `xi ~ 1/(2a)` apiece), large `a` means weak wells.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct Coupling {
    a: f64,
}

impl Coupling {
    pub fn new(a: f64) -> Result<Self, ModelError> {
        require_finite("a", a)?;
        if a == 0.0 {
            return Err(ModelError::OutOfRange {
                name: "a",
                value: a,
                constraint: "nonzero (alpha = infinity is not modeled)",
            });
        }
        Ok(Coupling { a })
    }

    pub fn value(self) -> f64 {
        self.a
    }

    /// True iff the wells attract (`a > 0`); only then can bound states exist.
    pub fn is_attractive(self) -> bool {
        self.a > 0.0
    }
}

/// Energy unit `e0 = hbar^2 / (2 m L^2)`; bound energies are `E = -xi^2 e0`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct EnergyScale {
    e0: f64,
}

impl EnergyScale {
    pub fn new(e0: f64) -> Result<Self, ModelError> {
        require_positive("e0", e0).map(|e0| EnergyScale { e0 })
    }

    /// The internal unit system: `e0 = 1`.
    pub fn canonical() -> Self {
        EnergyScale { e0: 1.0 }
    }

    pub fn e0(self) -> f64 {
        self.e0
    }
}

/// Raw physical constants of the problem, before unit reduction.
///
/// `alpha` is the delta strength (energy x length, positive = attractive),
/// `halfsep` is L, half the distance between the two wells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub mass: f64,
    pub alpha: f64,
    pub halfsep: f64,
}

impl PhysicalParams {
    pub fn new(hbar: f64, mass: f64, alpha: f64, halfsep: f64) -> Result<Self, ModelError> {
        require_positive("hbar", hbar)?;
        require_positive("mass", mass)?;
        require_finite("alpha", alpha)?;
        if alpha == 0.0 {
            return Err(ModelError::OutOfRange {
                name: "alpha",
                value: alpha,
                constraint: "nonzero",
            });
        }
        require_positive("halfsep", halfsep)?;
        Ok(PhysicalParams {
            hbar,
            mass,
            alpha,
            halfsep,
        })
    }

    /// `a = hbar^2 / (2 m alpha L)`. Homogeneous of degree zero in
    /// (hbar^2, m, alpha, L) jointly; scaling alpha alone by c scales a by 1/c.
    pub fn coupling(&self) -> Coupling {
        // Constructor invariants guarantee finiteness and alpha != 0.
        Coupling {
            a: self.hbar * self.hbar / (2.0 * self.mass * self.alpha * self.halfsep),
        }
    }

    /// `e0 = hbar^2 / (2 m L^2)`.
    pub fn energy_scale(&self) -> EnergyScale {
        EnergyScale {
            e0: self.hbar * self.hbar / (2.0 * self.mass * self.halfsep * self.halfsep),
        }
    }
}

/// Reduce physical constants to the dimensionless coupling.
pub fn coupling_from_physical(params: &PhysicalParams) -> Coupling {
    params.coupling()
}

/// `E = -xi^2 e0` for a decay parameter `xi > 0`.
pub fn energy_from_xi(xi: f64, scale: EnergyScale) -> Result<f64, ModelError> {
    require_positive("xi", xi)?;
    Ok(-xi * xi * scale.e0())
}

/// Signed quantization defect `f(xi) = 2 a xi - (1 -+ e^{-2 xi})`
/// (minus-sign branch `1 + e^{-2xi}` for even, `1 - e^{-2xi}` for odd).
/// A parity-xi pair is on shell exactly when this vanishes.
pub fn quantization_residual(parity: Parity, a: f64, xi: f64) -> f64 {
    let rhs = match parity {
        Parity::Even => 1.0 + (-2.0 * xi).exp(),
        Parity::Odd => 1.0 - (-2.0 * xi).exp(),
    };
    2.0 * a * xi - rhs
}

/// A validated bound state: parity, decay parameter, coupling, and energy.
///
/// Construction enforces the on-shell condition, so any `BoundState` handed
/// to the eigenfunction/transform layers already satisfies its quantization
/// condition to [`BoundState::ONSHELL_TOL`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BoundState {
    parity: Parity,
    xi: f64,
    coupling: Coupling,
    energy: f64,
}

impl BoundState {
    /// Largest |quantization residual| accepted by [`BoundState::new`].
    pub const ONSHELL_TOL: f64 = 1e-10;

    pub fn new(
        parity: Parity,
        xi: f64,
        coupling: Coupling,
        scale: EnergyScale,
    ) -> Result<Self, ModelError> {
        let energy = energy_from_xi(xi, scale)?;
        let residual = quantization_residual(parity, coupling.value(), xi).abs();
        if residual > Self::ONSHELL_TOL {
            return Err(ModelError::OffShell {
                parity,
                xi,
                residual,
                tol: Self::ONSHELL_TOL,
            });
        }
        Ok(BoundState {
            parity,
            xi,
            coupling,
            energy,
        })
    }

    /// Skip the on-shell check. For perturbed/negative-control constructions
    /// in tests and diagnostics; downstream layers re-check where it matters.
    pub fn new_unchecked(parity: Parity, xi: f64, coupling: Coupling, scale: EnergyScale) -> Self {
        BoundState {
            parity,
            xi,
            coupling,
            energy: -xi * xi * scale.e0(),
        }
    }

    pub fn parity(self) -> Parity {
        self.parity
    }

    /// Decay parameter: the eigenfunction falls off as `e^{-xi |x|/L}`.
    pub fn xi(self) -> f64 {
        self.xi
    }

    pub fn coupling(self) -> Coupling {
        self.coupling
    }

    pub fn energy(self) -> f64 {
        self.energy
    }

    /// |f(xi)| for this state's own parity and coupling.
    pub fn quantization_residual(self) -> f64 {
        quantization_residual(self.parity, self.coupling.value(), self.xi).abs()
    }
}
