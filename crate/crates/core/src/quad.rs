//! Deterministic adaptive cubature for Gaussian-weighted integrals over a
//! truncated ball.
//!
//! [`integrate_spherical`] computes
//!
//! ```text
//! I = int f(r, theta, phi) exp(-r^2/w^2)/(w^3 pi^(3/2)) r^2 sin(theta)
//!     dr dtheta dphi
//! ```
//!
//! over r in [0, r_max], theta in [0, pi], phi in [0, 2 pi]; the weight is
//! the normalized isotropic Gaussian of width parameter w, so an integrand
//! of 1 over the full ball gives 1. The radial axis is integrated in the
//! scaled variable u = r/w, which cancels the w^3 volume factor and makes
//! panel placement width-independent.
//!
//! Each panel (a box in (u, theta, phi)) is evaluated with a tensor-product
//! Gauss-Kronrod 7-15 pair. The K15 - G7 difference provides the error
//! estimate, and the same difference taken along one axis at a time picks
//! the split direction. Refinement always bisects the live panel with the
//! largest error estimate, ties broken by creation order, and the running
//! totals are re-accumulated in creation order with compensated summation,
//! so identical inputs give bit-identical results.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Scalar types the cubature can accumulate.
pub trait PanelValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    /// Absolute value used in error estimates and tolerance checks.
    fn magnitude(self) -> f64;
}

impl PanelValue for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl PanelValue for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// A Gaussian-weighted integration task over a truncated ball.
pub struct SphericalDomain<F> {
    /// Radial cutoff; the integral runs over r in [0, r_max].
    pub r_max: f64,
    /// Width parameter w of the normalized Gaussian weight.
    pub weight: f64,
    /// Integrand f(r, theta, phi); the weight and the r^2 sin(theta)
    /// Jacobian are supplied by the engine.
    pub integrand: F,
}

/// Outcome of an adaptive cubature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    /// Best estimate of the integral (retained even when not converged).
    pub value: T,
    /// Sum of per-panel K15 - G7 error estimates.
    pub error_estimate: f64,
    /// Number of integrand evaluations performed.
    pub evaluations: u64,
    /// Whether the error estimate met the tolerance within budget.
    pub converged: bool,
}

/// Minimum evaluation budget; one tensor panel costs 15^3 evaluations.
pub const MIN_BUDGET: u64 = 1_000;

const NODES_PER_PANEL: u64 = 15 * 15 * 15;

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1], indexed ascending.
// WG is the embedded 7-point Gauss rule placed at the odd Kronrod nodes,
// zero elsewhere.
const NODES: [f64; 15] = [
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

const WK: [f64; 15] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

const WG: [f64; 15] = [
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.129484966168869693270611432679082,
    0.0,
];

// Coarse radial breakpoints in u = r/w. The Gaussian kernel u^2 exp(-u^2)
// concentrates below u ~ 4, so seeding panels there avoids wasting the
// first refinements on a cutoff many widths away.
const U_BREAKS: [f64; 7] = [1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0];

struct Panel<T> {
    lo: [f64; 3],
    hi: [f64; 3],
    value: T,
    err: f64,
    axis_err: [f64; 3],
    alive: bool,
}

struct HeapEntry {
    err: f64,
    seq: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // Larger error first; on ties the earlier panel wins, keeping the
    // refinement order independent of heap internals.
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Evaluates a Gaussian-weighted integral over the truncated ball.
///
/// Converges when the summed error estimate drops below `tol` relative to
/// the running value, or below `tol` absolutely while the value magnitude
/// is under 1e-8. When `budget` integrand evaluations are exhausted first,
/// the best estimate is returned with `converged = false` rather than an
/// error, so callers can decide how to report it.
///
/// Preconditions: `r_max > 0`, `weight > 0`, `tol` in (1e-13, 1e-2),
/// `budget >= MIN_BUDGET`. Violations are `Error::InvalidParameter`.
pub fn integrate_spherical<T, F>(
    domain: &SphericalDomain<F>,
    tol: f64,
    budget: u64,
) -> Result<QuadResult<T>>
where
    T: PanelValue,
    F: Fn(f64, f64, f64) -> T,
{
    if !domain.r_max.is_finite() || domain.r_max <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "r_max",
            value: domain.r_max,
            reason: "must be finite and positive",
        });
    }
    if !domain.weight.is_finite() || domain.weight <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "weight",
            value: domain.weight,
            reason: "must be finite and positive",
        });
    }
    if !(tol > 1e-13 && tol < 1e-2) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must lie in (1e-13, 1e-2)",
        });
    }
    if budget < MIN_BUDGET {
        return Err(Error::InvalidParameter {
            name: "budget",
            value: budget as f64,
            reason: "must be at least MIN_BUDGET",
        });
    }

    let w = domain.weight;
    let u_max = domain.r_max / w;
    let inv_pi32 = 1.0 / (PI * PI.sqrt());
    // Full panel integrand: user f times the scaled weight and Jacobian.
    // When the Gaussian kernel underflows to zero the user integrand is
    // skipped, so integrands that divide out the envelope stay finite.
    let kernel = |u: f64, theta: f64, phi: f64| -> T {
        let k = u * u * (-u * u).exp() * theta.sin() * inv_pi32;
        if k == 0.0 {
            T::default()
        } else {
            (domain.integrand)(w * u, theta, phi) * k
        }
    };

    let mut breaks = vec![0.0];
    for b in U_BREAKS {
        if b < u_max {
            breaks.push(b);
        }
    }
    breaks.push(u_max);

    let mut panels: Vec<Panel<T>> = Vec::new();
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
    let mut evaluations: u64 = 0;

    let push_panel = |lo: [f64; 3],
                          hi: [f64; 3],
                          panels: &mut Vec<Panel<T>>,
                          heap: &mut BinaryHeap<HeapEntry>,
                          evaluations: &mut u64| {
        let (value, err, axis_err) = eval_panel(&kernel, lo, hi);
        *evaluations += NODES_PER_PANEL;
        let seq = panels.len();
        panels.push(Panel {
            lo,
            hi,
            value,
            err,
            axis_err,
            alive: true,
        });
        heap.push(HeapEntry { err, seq });
    };

    for pair in breaks.windows(2) {
        push_panel(
            [pair[0], 0.0, 0.0],
            [pair[1], PI, 2.0 * PI],
            &mut panels,
            &mut heap,
            &mut evaluations,
        );
    }

    loop {
        // Re-accumulate in creation order: the total is then independent of
        // the heap's internal layout.
        let mut sum = T::default();
        let mut comp = T::default();
        let mut total_err = 0.0;
        for p in panels.iter().filter(|p| p.alive) {
            let y = p.value - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            total_err += p.err;
        }
        let threshold = if sum.magnitude() > 1e-8 {
            tol * sum.magnitude()
        } else {
            tol
        };
        if total_err <= threshold {
            return Ok(QuadResult {
                value: sum,
                error_estimate: total_err,
                evaluations,
                converged: true,
            });
        }
        if evaluations + 2 * NODES_PER_PANEL > budget {
            return Ok(QuadResult {
                value: sum,
                error_estimate: total_err,
                evaluations,
                converged: false,
            });
        }

        let worst = loop {
            let entry = heap.pop().expect("a live panel exists while unconverged");
            if panels[entry.seq].alive {
                break entry.seq;
            }
        };
        panels[worst].alive = false;
        let (lo, hi, axis_err) = (panels[worst].lo, panels[worst].hi, panels[worst].axis_err);
        let mut axis = 0;
        for a in 1..3 {
            if axis_err[a] > axis_err[axis] {
                axis = a;
            }
        }
        let mid = 0.5 * (lo[axis] + hi[axis]);
        let mut hi_left = hi;
        hi_left[axis] = mid;
        let mut lo_right = lo;
        lo_right[axis] = mid;
        push_panel(lo, hi_left, &mut panels, &mut heap, &mut evaluations);
        push_panel(lo_right, hi, &mut panels, &mut heap, &mut evaluations);
    }
}

/// Tensor-product G7-K15 evaluation of one panel. Returns the K15 value,
/// the |K - G| error estimate, and the per-axis |K - G_axis| indicators
/// used to pick the split direction.
fn eval_panel<T, F>(kernel: &F, lo: [f64; 3], hi: [f64; 3]) -> (T, f64, [f64; 3])
where
    T: PanelValue,
    F: Fn(f64, f64, f64) -> T,
{
    let half = [
        0.5 * (hi[0] - lo[0]),
        0.5 * (hi[1] - lo[1]),
        0.5 * (hi[2] - lo[2]),
    ];
    let mid = [
        0.5 * (hi[0] + lo[0]),
        0.5 * (hi[1] + lo[1]),
        0.5 * (hi[2] + lo[2]),
    ];
    let scale = half[0] * half[1] * half[2];

    let mut kkk = T::default();
    let mut ggg = T::default();
    let mut gkk = T::default();
    let mut kgk = T::default();
    let mut kkg = T::default();

    for i in 0..15 {
        let u = mid[0] + half[0] * NODES[i];
        let mut jk_kk = T::default();
        let mut jk_gk = T::default();
        let mut jk_kg = T::default();
        let mut jk_gg = T::default();
        for j in 0..15 {
            let theta = mid[1] + half[1] * NODES[j];
            let mut k_k = T::default();
            let mut k_g = T::default();
            for l in 0..15 {
                let phi = mid[2] + half[2] * NODES[l];
                let v = kernel(u, theta, phi);
                k_k = k_k + v * WK[l];
                k_g = k_g + v * WG[l];
            }
            jk_kk = jk_kk + k_k * WK[j];
            jk_kg = jk_kg + k_g * WK[j];
            jk_gk = jk_gk + k_k * WG[j];
            jk_gg = jk_gg + k_g * WG[j];
        }
        kkk = kkk + jk_kk * WK[i];
        gkk = gkk + jk_kk * WG[i];
        kgk = kgk + jk_gk * WK[i];
        kkg = kkg + jk_kg * WK[i];
        ggg = ggg + jk_gg * WG[i];
    }

    let value = kkk * scale;
    let err = (kkk - ggg).magnitude() * scale;
    let axis_err = [
        (kkk - gkk).magnitude() * scale,
        (kkk - kgk).magnitude() * scale,
        (kkk - kkg).magnitude() * scale,
    ];
    (value, err, axis_err)
}
