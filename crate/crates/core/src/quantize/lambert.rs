//! Real branches of the Lambert W function, solved by Halley iteration on
//! `w e^w = z`. Used as an independent closed-form oracle for the
//! quantization roots; the bisection solver never calls into here.

use super::SolveError;

/// exp(-1), the left edge of the real domain.
const INV_E: f64 = 0.36787944117144233;

/// Series around the branch point z = -1/e: W = -1 + p - p²/3 + 11p³/72 - ...
/// with p = ±sqrt(2(ez + 1)); plus sign for W0, minus for W-1.
fn branch_point_guess(z: f64, principal: bool) -> f64 {
    let t = (2.0 * (std::f64::consts::E * z + 1.0)).max(0.0);
    let p = if principal { t.sqrt() } else { -t.sqrt() };
    -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
}

fn halley(z: f64, mut w: f64, principal: bool) -> Result<f64, SolveError> {
    for _ in 0..100 {
        // Keep the iterate on its own branch: W0 >= -1 >= W-1.
        if (principal && w < -1.0) || (!principal && w > -1.0) {
            w = -2.0 - w;
        }
        let ew = w.exp();
        let f = w * ew - z;
        if f == 0.0 {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(1e-3) {
            return Ok(w);
        }
    }
    // Accept anyway if the residual is tiny relative to z (flat-f region near
    // the branch point can stall the step criterion without being wrong).
    let resid = (w * w.exp() - z).abs();
    if resid <= 1e-10 * z.abs().max(1e-30) {
        Ok(w)
    } else {
        Err(SolveError::NoConvergence {
            iterations: 100,
            residual: resid,
        })
    }
}

/// Principal branch W0: real for z >= -1/e, with W0 >= -1.
pub fn lambert_w0(z: f64) -> Result<f64, SolveError> {
    if !z.is_finite() {
        return Err(SolveError::LambertDomain {
            branch: 0,
            z,
            why: "argument must be finite",
        });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let t = z + INV_E;
    if t < 0.0 {
        // A hair under the branch point is rounding, not a domain error.
        if t > -1e-14 {
            return Ok(-1.0);
        }
        return Err(SolveError::LambertDomain {
            branch: 0,
            z,
            why: "requires z >= -1/e",
        });
    }
    let guess = if z < -0.25 {
        branch_point_guess(z, true)
    } else if z < 1.0 {
        // Taylor series at 0 as a starter; Halley does the rest.
        z * (1.0 + z * (-1.0 + z * 1.5))
    } else {
        let l = z.ln();
        if l > 3.0 {
            l - l.ln()
        } else {
            l.max(0.2)
        }
    };
    halley(z, guess, true)
}

/// Lower real branch W-1: real for -1/e <= z < 0, with W-1 <= -1.
pub fn lambert_wm1(z: f64) -> Result<f64, SolveError> {
    if !z.is_finite() || z >= 0.0 {
        return Err(SolveError::LambertDomain {
            branch: -1,
            z,
            why: "requires -1/e <= z < 0",
        });
    }
    let t = z + INV_E;
    if t < 0.0 {
        if t > -1e-14 {
            return Ok(-1.0);
        }
        return Err(SolveError::LambertDomain {
            branch: -1,
            z,
            why: "requires -1/e <= z < 0",
        });
    }
    let guess = if z < -0.25 {
        branch_point_guess(z, false)
    } else {
        // z -> 0^-: W-1 ~ ln(-z) - ln(-ln(-z)) + ...
        let l1 = (-z).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1)
    };
    halley(z, guess, false)
}
