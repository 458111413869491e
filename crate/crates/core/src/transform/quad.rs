//! Quadrature engine: composite Gauss–Kronrod 7–15 panels with greedy
//! adaptive refinement, plus the oscillatory/smooth tail handling used by the
//! semi-infinite trig integrals.
//!
//! Everything here returns a value *and* an error estimate; deciding whether
//! that estimate meets a tolerance is the caller's job (the public transform
//! ops compose several pieces and gate the combined error once).

use super::QuadratureSpec;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// A value with an attached absolute-error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Quad {
    pub value: f64,
    pub err: f64,
}

impl Quad {
    pub(crate) fn zero() -> Self {
        Quad {
            value: 0.0,
            err: 0.0,
        }
    }

    pub(crate) fn add(self, other: Quad) -> Quad {
        Quad {
            value: self.value + other.value,
            err: self.err + other.err,
        }
    }

    pub(crate) fn scale(self, factor: f64) -> Quad {
        Quad {
            value: factor * self.value,
            err: factor.abs() * self.err,
        }
    }
}

// QUADPACK 7-15 rule: Kronrod abscissae, embedded 7-point Gauss weights,
// 15-point Kronrod weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// QUADPACK-style error rescaling: accounts for the superconvergence of the
/// Kronrod result relative to the raw |K15 - G7| difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One 7–15 Gauss–Kronrod panel on [a, b]. Endpoints are never sampled.
pub(crate) fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Quad {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        let sum = f1 + f2;
        res_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            // XGK odd indices are the embedded Gauss nodes (j = 1, 3, 5).
            res_gauss += WG[j / 2] * sum;
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let err = ((res_kronrod - res_gauss) * half).abs();
    Quad {
        value: res_kronrod * half,
        err: rescale_error(err, res_abs * half.abs(), res_asc * half.abs()),
    }
}

struct Panel {
    a: f64,
    b: f64,
    result: Quad,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.result.err == other.result.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on error estimate; NaN sorts greatest so it splits first.
        match (self.result.err.is_nan(), other.result.err.is_nan()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self.result.err.total_cmp(&other.result.err),
        }
    }
}

/// Adaptive composite quadrature of `f` over [a, b].
///
/// `pre_splits` seeds panel boundaries (kinks, trig half-periods, pole
/// excision edges); refinement bisects the worst panel until the summed
/// error estimate meets max(abs_tol, rel_tol·|value|) or the depth/panel
/// budget runs out. The final sum runs over panels ordered by left endpoint,
/// so the result is independent of refinement order.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    pre_splits: &[f64],
    q: &QuadratureSpec,
) -> Quad {
    if a == b {
        return Quad::zero();
    }
    debug_assert!(a < b);

    let mut edges: Vec<f64> = Vec::with_capacity(pre_splits.len() + 2);
    edges.push(a);
    edges.extend(pre_splits.iter().copied().filter(|&s| s > a && s < b));
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap = BinaryHeap::with_capacity(edges.len() + 64);
    let mut total = Quad::zero();
    for w in edges.windows(2) {
        let result = gk15(f, w[0], w[1]);
        total = total.add(result);
        heap.push(Panel {
            a: w[0],
            b: w[1],
            result,
            depth: 0,
        });
    }

    while total.err > q.abs_tol.max(q.rel_tol * total.value.abs()) {
        if !total.value.is_finite() {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= q.max_depth || heap.len() + 2 > q.max_panels {
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel already at floating-point resolution.
            heap.push(worst);
            break;
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        total.value += left.value + right.value - worst.result.value;
        total.err += left.err + right.err - worst.result.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            result: left,
            depth: worst.depth + 1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            result: right,
            depth: worst.depth + 1,
        });
    }

    // Deterministic final summation: panels in spatial order.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, r| p.a.total_cmp(&r.a));
    let mut value = 0.0;
    let mut err = 0.0;
    for p in &panels {
        value += p.result.value;
        err += p.result.err;
    }
    Quad { value, err }
}

/// `∫_{k0}^∞ g(k) dk` for a smooth, eventually-monotone integrand decaying at
/// least like k^{-2}: geometric doubling panels, stopped when a panel's
/// contribution falls below `floor`; the remainder is bounded by the last
/// panel (ratio ≤ 1/2 per doubling for k^{-2} decay).
pub(crate) fn smooth_tail<F: Fn(f64) -> f64>(
    g: &F,
    k0: f64,
    floor: f64,
    q: &QuadratureSpec,
) -> Quad {
    let mut total = Quad::zero();
    let mut left = k0;
    let mut last = f64::INFINITY;
    for _ in 0..q.tail_doublings {
        let right = 2.0 * left;
        let mid = 1.5 * left;
        let piece = gk15(g, left, mid).add(gk15(g, mid, right));
        total = total.add(piece);
        last = piece.value.abs();
        left = right;
        if last <= floor {
            break;
        }
    }
    // Geometric remainder bound; infinite `last` (budget exhausted on a fat
    // tail) propagates into the error estimate and fails the caller's gate.
    total.err += last;
    total
}

/// `∫_{k0}^∞ g(k) cos(beta k) dk` for smooth g ≥-decaying like k^{-2}, no
/// poles past k0: bridge to the first cosine zero with doubling panels, then
/// sum half-period lobes with repeated averaging (Euler transformation) of
/// the alternating partial sums.
pub(crate) fn oscillatory_cos_tail<F: Fn(f64) -> f64>(
    g: &F,
    beta: f64,
    k0: f64,
    q: &QuadratureSpec,
) -> Quad {
    debug_assert!(beta >= 0.0);
    if beta * k0 < 1e-9 && beta < 1e-9 {
        // Degenerate frequency: the kernel is 1 to double precision over the
        // whole effective tail only when beta is tiny in absolute terms too.
        return smooth_tail(g, k0, q.abs_tol / 8.0, q);
    }
    let h = |k: f64| g(k) * (beta * k).cos();
    let pi = std::f64::consts::PI;
    let half_period = pi / beta;

    // First zero of cos(beta k) at or beyond k0.
    let n = ((beta * k0 / pi - 0.5).ceil()).max(0.0);
    let mut z0 = (n + 0.5) * pi / beta;
    while z0 <= k0 {
        z0 += half_period;
    }

    // Every bridge segment and lobe gets its own slice of the error budget:
    // for long half-periods (small beta) a single panel cannot resolve the
    // integrand's decay across the lobe.
    let piece_spec = QuadratureSpec {
        abs_tol: q.abs_tol / (q.tail_segments as f64 + 16.0),
        max_panels: 1024,
        ..q.clone()
    };

    // Bridge [k0, z0]: doubling segments, refined adaptively.
    let mut bridge = Quad::zero();
    let mut left = k0;
    while z0 - left > 1e-14 * z0 {
        let right = (2.0 * left).min(z0);
        bridge = bridge.add(adaptive(&h, left, right, &[], &piece_spec));
        left = right;
    }

    // Half-period lobes: u_j alternate in sign.
    let mut lobes: Vec<f64> = Vec::with_capacity(q.tail_segments as usize);
    let mut z = z0;
    let mut truncation = 0.0;
    for j in 0..q.tail_segments {
        let piece = adaptive(&h, z, z + half_period, &[], &piece_spec);
        bridge.err += piece.err;
        lobes.push(piece.value);
        z += half_period;
        truncation = piece.value.abs();
        if truncation <= q.abs_tol / 16.0 && j >= 3 {
            break;
        }
    }

    // Euler transformation: repeatedly average adjacent partial sums. The
    // final single element is the binomially weighted estimate; convergence
    // is geometric in the number of lobes for alternating tails.
    let mut s: Vec<f64> = Vec::with_capacity(lobes.len());
    let mut acc = 0.0;
    for u in &lobes {
        acc += u;
        s.push(acc);
    }
    let mut prev = *s.last().unwrap_or(&0.0);
    let mut stage_change: f64 = 0.0;
    while s.len() > 1 {
        for i in 0..s.len() - 1 {
            s[i] = 0.5 * (s[i] + s[i + 1]);
        }
        s.pop();
        let est = *s.last().unwrap();
        stage_change = (est - prev).abs();
        prev = est;
    }
    Quad {
        value: bridge.value + prev,
        err: bridge.err + stage_change + truncation.min(q.abs_tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn gk15_is_exact_on_low_degree_polynomials() {
        // Degree-13 polynomial: within the G7 exactness degree, so the error
        // estimate should be at rounding level and the value exact.
        let f = |x: f64| 3.0 * x.powi(13) - x.powi(6) + 2.0 * x - 5.0;
        let quad = gk15(&f, -1.0, 2.0);
        let exact = |x: f64| 3.0 / 14.0 * x.powi(14) - x.powi(7) / 7.0 + x * x - 5.0 * x;
        assert_abs_diff_eq!(quad.value, exact(2.0) - exact(-1.0), epsilon = 1e-10);
    }

    #[test]
    fn adaptive_handles_a_kink() {
        // |x| on [-1, 2] without a pre-split: refinement must find x = 0.
        let quad = adaptive(&|x: f64| x.abs(), -1.0, 2.0, &[], &spec());
        assert_abs_diff_eq!(quad.value, 2.5, epsilon = 1e-11);
        assert!(quad.err < 1e-10);
        // With the kink pre-split the panels are exact immediately.
        let quad = adaptive(&|x: f64| x.abs(), -1.0, 2.0, &[0.0], &spec());
        assert_abs_diff_eq!(quad.value, 2.5, epsilon = 1e-13);
    }

    #[test]
    fn adaptive_matches_closed_forms() {
        let quad = adaptive(&|x: f64| (-x).exp(), 0.0, 30.0, &[], &spec());
        assert_abs_diff_eq!(quad.value, 1.0 - (-30.0f64).exp(), epsilon = 1e-12);
        let quad = adaptive(&|x: f64| (5.0 * x).sin(), 0.0, 3.0, &[], &spec());
        assert_abs_diff_eq!(quad.value, (1.0 - (15.0f64).cos()) / 5.0, epsilon = 1e-12);
    }

    #[test]
    fn smooth_tail_matches_arctan_remainder() {
        // ∫_4^∞ dk/(k²+1) = π/2 − arctan 4.
        let g = |k: f64| 1.0 / (k * k + 1.0);
        let t = smooth_tail(&g, 4.0, 1e-13, &spec());
        let exact = std::f64::consts::FRAC_PI_2 - 4.0f64.atan();
        assert_abs_diff_eq!(t.value, exact, epsilon = 1e-9);
        assert!(t.err < 1e-6, "remainder bound too loose: {}", t.err);
    }

    #[test]
    fn oscillatory_tail_matches_pv_cosine_identity() {
        // PV ∫_0^∞ cos(βk)/(k²−d²) dk = −(π/2d)·sin(βd). Take the tail from
        // K0 > d and compare against the identity minus the head computed by
        // plain adaptive panels (no pole in [0, K0] complement trickery:
        // head has the pole, so instead compare two different K0 values for
        // consistency — the difference must equal the head segment between).
        let d = 1.3f64;
        let g = |k: f64| 1.0 / (k * k - d * d);
        let beta = 2.7f64;
        let tail_a = oscillatory_cos_tail(&g, beta, 10.0, &spec());
        let tail_b = oscillatory_cos_tail(&g, beta, 20.0, &spec());
        let between = adaptive(
            &|k: f64| (beta * k).cos() * g(k),
            10.0,
            20.0,
            &(0..9).map(|i| 10.0 + i as f64 * 1.25).collect::<Vec<_>>(),
            &spec(),
        );
        assert_abs_diff_eq!(tail_a.value, between.value + tail_b.value, epsilon = 1e-10);
        assert!(tail_a.err < 1e-8);
    }

    #[test]
    fn oscillatory_tail_beta_zero_falls_back_to_smooth() {
        let g = |k: f64| 1.0 / (k * k);
        let t = oscillatory_cos_tail(&g, 0.0, 2.0, &spec());
        assert_abs_diff_eq!(t.value, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn oscillatory_tail_against_sine_integral_reference() {
        // Integration by parts gives
        //   ∫_1^∞ cos(πk)/k² dk = −1 − π(π/2 − Si(π)) = −0.11677036312582455,
        // frozen from a 30-digit evaluation of the Si closed form.
        let g = |k: f64| 1.0 / (k * k);
        let t = oscillatory_cos_tail(&g, std::f64::consts::PI, 1.0, &spec());
        assert_abs_diff_eq!(t.value, -0.11677036312582455, epsilon = 1e-9);
    }
}
