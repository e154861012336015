//! Spin entropy of a boosted Gaussian wavepacket.
//!
//! A spin-up Gaussian packet is boosted along x. Momenta are handled in
//! units of mc throughout, so a packet is characterized by the single
//! dimensionless width w = (momentum spread)/(mc). For a momentum p with
//! energy factor p0 = sqrt(1 + |p|^2), the boost rotates the spinor by the
//! momentum-dependent factors
//!
//! ```text
//! b1 = cosh(a/2) (p0 + 1) - sinh(a/2) (px + i py)
//! b2 = -sinh(a/2) pz
//! K  = sqrt( p0 / (q0 (p0 + 1)(q0 + 1)) )
//! ```
//!
//! with rapidity a and q the momentum seen by the moving observer,
//! q = (gamma (p0 - beta px), gamma (px - beta p0), py, pz). Averaging the
//! rotation over the packet leaves the moving observer's polarization
//!
//! ```text
//! nz' = int d^3r  exp(-|r|^2/w^2) / (w^3 pi^(3/2)) G(r)
//! ```
//!
//! with the pointwise factor [`g_of_r`]; the transverse components vanish
//! by symmetry. For narrow packets nz' has the expansion implemented by
//! [`nz_prime_series`], and the entropy of the reduced spin state follows
//! from the modulus nz' alone.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::core::MODULUS_SLACK;
use crate::quad::{integrate_spherical, QuadResult, SphericalDomain};
use crate::{entropy_from_modulus, BlochVector, BoostParams, Error, Result};

/// Effective support of the Gaussian weight in widths: exp(-12^2) ~ 3e-63,
/// far below f64 resolution. Shared by the radial cutoffs and the boosted
/// envelope hint so truncation is consistent across routes.
pub const SUPPORT_FACTOR: f64 = 12.0;

/// Default evaluation budget for the one-dimensional polarization profile.
pub const DEFAULT_NZ_BUDGET: u64 = 20_000_000;

/// Default evaluation budget per integral when reducing generic amplitudes.
pub const DEFAULT_BLOCH_BUDGET: u64 = 60_000_000;

/// Tolerated deviation of the amplitude norm integral from 1.
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// Gaussian momentum packet of dimensionless width w = spread/(mc).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    wtilde: f64,
    physical: Option<PhysicalWidth>,
}

/// Physical inputs a packet was built from, when it was.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalWidth {
    pub w: f64,
    pub mass: f64,
    pub c: f64,
}

impl GaussianPacket {
    /// Packet from the dimensionless width directly.
    pub fn new(wtilde: f64) -> Result<Self> {
        if !wtilde.is_finite() || wtilde <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "wtilde",
                value: wtilde,
                reason: "must be finite and positive",
            });
        }
        Ok(GaussianPacket {
            wtilde,
            physical: None,
        })
    }

    /// Packet from a dimensionful momentum spread `w`, mass, and c;
    /// stores wtilde = w/(mass c) plus the original inputs.
    pub fn from_physical(w: f64, mass: f64, c: f64) -> Result<Self> {
        for (name, v) in [("w", w), ("mass", mass), ("c", c)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be finite and positive",
                });
            }
        }
        Ok(GaussianPacket {
            wtilde: w / (mass * c),
            physical: Some(PhysicalWidth { w, mass, c }),
        })
    }

    pub fn wtilde(&self) -> f64 {
        self.wtilde
    }

    pub fn physical(&self) -> Option<PhysicalWidth> {
        self.physical
    }
}

/// Momentum-dependent spinor factors of a boost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerFactors {
    pub b1: Complex64,
    pub b2: Complex64,
    /// Positive normalization factor; at zero rapidity K b1 = 1.
    pub k: f64,
}

/// Spinor factors for momentum `p` (units of mc) under `boost`.
pub fn wigner_boost_amplitudes(p: [f64; 3], boost: &BoostParams) -> WignerFactors {
    let [px, py, pz] = p;
    let p0 = (1.0 + px * px + py * py + pz * pz).sqrt();
    let half = 0.5 * boost.alpha();
    let (ch, sh) = (half.cosh(), half.sinh());
    let q0 = boost.gamma() * (p0 - boost.beta() * px);
    WignerFactors {
        b1: Complex64::new(ch * (p0 + 1.0) - sh * px, -sh * py),
        b2: Complex64::new(-sh * pz, 0.0),
        k: (p0 / (q0 * (p0 + 1.0) * (q0 + 1.0))).sqrt(),
    }
}

/// Pointwise polarization transfer factor G(r).
///
/// With x, y, z the Cartesian components of r and s = sqrt(1 + |r|^2),
///
/// ```text
/// G = [ (gamma + 1 - gamma beta x)(1 + s) + gamma (x^2 + y^2) + z^2 ]
///     / [ (1 + s)(1 + gamma (s - beta x)) ]
/// ```
///
/// G(0) = 1, G = 1 identically at beta = 0, and G <= 1 everywhere: the
/// shortfall from 1 is exactly the spin-flip weight
/// 2 sinh^2(a/2) z^2 / ((1 + s)(1 + gamma (s - beta x))), which also
/// bounds G >= -1 pointwise. G is the cosine of the momentum-dependent
/// rotation angle, so it need not stay positive: for |beta| <= 0.9 the
/// flip weight is below 0.79 for every r (G > 0.21), but beyond
/// beta ~ 0.94 the rotation passes a quarter turn at large |r| and G
/// turns negative far out in the tail, where the Gaussian weight of the
/// polarization integral has long since cut off.
pub fn g_of_r(r: [f64; 3], boost: &BoostParams) -> f64 {
    let [x, y, z] = r;
    let gamma = boost.gamma();
    let beta = boost.beta();
    let s = (1.0 + x * x + y * y + z * z).sqrt();
    let num = (gamma + 1.0 - gamma * beta * x) * (1.0 + s) + gamma * (x * x + y * y) + z * z;
    let den = (1.0 + s) * (1.0 + gamma * (s - beta * x));
    num / den
}

fn cartesian(r: f64, theta: f64, phi: f64) -> [f64; 3] {
    let st = theta.sin();
    [r * st * phi.cos(), r * st * phi.sin(), r * theta.cos()]
}

fn clamp_modulus(v: f64) -> f64 {
    if v > 1.0 && v <= 1.0 + MODULUS_SLACK {
        1.0
    } else {
        v
    }
}

/// Radial cutoff for the polarization integral: the full Gaussian support,
/// never less than a few units of mc so wide-tail factors are covered.
fn nz_r_max(wtilde: f64) -> f64 {
    (SUPPORT_FACTOR * wtilde).max(3.0)
}

/// Boosted longitudinal polarization nz' by adaptive cubature, with the
/// cubature diagnostics. The value is clamped onto [0, 1] within
/// [`MODULUS_SLACK`]; `converged` reports whether `tol` was met within
/// `budget` evaluations.
pub fn nz_prime_quadrature_result(
    packet: &GaussianPacket,
    boost: &BoostParams,
    tol: f64,
    budget: u64,
) -> Result<QuadResult<f64>> {
    let b = *boost;
    let domain = SphericalDomain {
        r_max: nz_r_max(packet.wtilde()),
        weight: packet.wtilde(),
        integrand: move |r: f64, theta: f64, phi: f64| g_of_r(cartesian(r, theta, phi), &b),
    };
    let mut res = integrate_spherical(&domain, tol, budget)?;
    res.value = clamp_modulus(res.value);
    Ok(res)
}

/// Boosted longitudinal polarization nz', in (0, 1].
///
/// Errors with [`Error::NoConvergence`] when the default budget runs out
/// before the requested relative tolerance is met.
pub fn nz_prime_quadrature(packet: &GaussianPacket, boost: &BoostParams, tol: f64) -> Result<f64> {
    let res = nz_prime_quadrature_result(packet, boost, tol, DEFAULT_NZ_BUDGET)?;
    if !res.converged {
        return Err(Error::NoConvergence {
            estimate: res.value,
            error_estimate: res.error_estimate,
            evaluations: res.evaluations,
        });
    }
    Ok(res.value)
}

/// Truncation order of the small-width expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOrder {
    /// Through w^2.
    Two,
    /// Through w^4.
    Four,
}

/// Small-width expansion of nz' at exact gamma:
///
/// ```text
/// nz' = 1 - (gamma-1)/(gamma+1) w^2/4
///         + (11 gamma^3 + 9 gamma^2 - 11 gamma - 9)/(1+gamma)^3 w^4/32
///         + O(w^6)
/// ```
///
/// The w^2 coefficient tends to -1/4 as gamma grows without bound.
pub fn nz_prime_series(packet: &GaussianPacket, boost: &BoostParams, order: SeriesOrder) -> f64 {
    let g = boost.gamma();
    let w2 = packet.wtilde() * packet.wtilde();
    let c1 = (g - 1.0) / (g + 1.0);
    let mut nz = 1.0 - c1 * w2 / 4.0;
    if order == SeriesOrder::Four {
        let c2 = (11.0 * g * g * g + 9.0 * g * g - 11.0 * g - 9.0) / (1.0 + g).powi(3);
        nz += c2 * w2 * w2 / 32.0;
    }
    nz
}

/// Double expansion of nz' in width and velocity:
///
/// ```text
/// nz' = 1 - (w^2/16 - 5 w^4/64) beta^2 + O(beta^4) + O(w^6 beta^2)
/// ```
pub fn nz_prime_small_beta(packet: &GaussianPacket, beta: f64) -> f64 {
    let w2 = packet.wtilde() * packet.wtilde();
    1.0 - (w2 / 16.0 - 5.0 * w2 * w2 / 64.0) * beta * beta
}

/// A spin-1/2 momentum wavefunction as a pair of amplitude callables.
///
/// `envelope_width` is the support hint: the amplitudes must decay at
/// least as fast as exp(-|p|^2 / (2 envelope_width^2)) (times any bounded
/// factor), and the reduction integrates over |p| <= 12 envelope_width.
/// The pair must be normalized: int (|a1|^2 + |a2|^2) d^3p = 1.
pub struct SpinorAmplitudes<F1, F2>
where
    F1: Fn([f64; 3]) -> Complex64,
    F2: Fn([f64; 3]) -> Complex64,
{
    pub a1: F1,
    pub a2: F2,
    pub envelope_width: f64,
}

/// Spin-up Gaussian packet amplitudes in the rest frame.
pub fn gaussian_rest_amplitudes(
    packet: &GaussianPacket,
) -> SpinorAmplitudes<impl Fn([f64; 3]) -> Complex64, impl Fn([f64; 3]) -> Complex64> {
    let w = packet.wtilde();
    let norm = (PI * w * w).powf(-0.75);
    let inv_2w2 = 1.0 / (2.0 * w * w);
    SpinorAmplitudes {
        a1: move |p: [f64; 3]| {
            let pp = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
            Complex64::new(norm * (-pp * inv_2w2).exp(), 0.0)
        },
        a2: |_p: [f64; 3]| Complex64::new(0.0, 0.0),
        envelope_width: w,
    }
}

/// The same packet as seen by the boosted observer: each amplitude at
/// observer momentum q is K a1(p) (b1, b2) evaluated at the rest-frame
/// momentum p = (gamma (qx + beta q0), qy, qz). The envelope hint covers
/// the displaced support, radius gamma (12 w + beta sqrt(1 + (12 w)^2)).
pub fn boosted_gaussian_amplitudes(
    packet: &GaussianPacket,
    boost: &BoostParams,
) -> SpinorAmplitudes<impl Fn([f64; 3]) -> Complex64, impl Fn([f64; 3]) -> Complex64> {
    let w = packet.wtilde();
    let norm = (PI * w * w).powf(-0.75);
    let inv_2w2 = 1.0 / (2.0 * w * w);
    let b = *boost;
    let r = SUPPORT_FACTOR * w;
    let envelope_width =
        b.gamma() * (r + b.beta().abs() * (1.0 + r * r).sqrt()) / SUPPORT_FACTOR;

    let rest_momentum = move |q: [f64; 3]| -> [f64; 3] {
        let q0 = (1.0 + q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        [b.gamma() * (q[0] + b.beta() * q0), q[1], q[2]]
    };
    let amp = move |q: [f64; 3], flip: bool| -> Complex64 {
        let p = rest_momentum(q);
        let wf = wigner_boost_amplitudes(p, &b);
        let pp = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        let rest = norm * (-pp * inv_2w2).exp();
        let spinor = if flip { wf.b2 } else { wf.b1 };
        spinor * (rest * wf.k)
    };

    SpinorAmplitudes {
        a1: move |q: [f64; 3]| amp(q, false),
        a2: move |q: [f64; 3]| amp(q, true),
        envelope_width,
    }
}

/// Reduces an amplitude pair to its Bloch vector:
///
/// ```text
/// nz        = int (|a1|^2 - |a2|^2) d^3p
/// nx - i ny = 2 int a1 a2* d^3p
/// ```
///
/// The Gaussian envelope is divided out and handed to the cubature as its
/// weight, which keeps the radial substitution well conditioned; the
/// envelope hint must therefore dominate the true decay. Fails with
/// [`Error::NotNormalized`] when the norm integral strays from 1 by more
/// than [`NORMALIZATION_TOL`], and with [`Error::NoConvergence`] when any
/// component integral fails to converge.
pub fn bloch_from_amplitudes<F1, F2>(psi: &SpinorAmplitudes<F1, F2>, tol: f64) -> Result<BlochVector>
where
    F1: Fn([f64; 3]) -> Complex64,
    F2: Fn([f64; 3]) -> Complex64,
{
    let w = psi.envelope_width;
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "envelope_width",
            value: w,
            reason: "must be finite and positive",
        });
    }
    let env_norm = w * w * w * PI * PI.sqrt();
    let inv_w2 = 1.0 / (w * w);
    let inv_envelope = move |r: f64| env_norm * (r * r * inv_w2).exp();

    let run_real = |f: &dyn Fn([f64; 3]) -> f64| -> Result<f64> {
        let domain = SphericalDomain {
            r_max: SUPPORT_FACTOR * w,
            weight: w,
            integrand: |r: f64, theta: f64, phi: f64| f(cartesian(r, theta, phi)) * inv_envelope(r),
        };
        let res = integrate_spherical(&domain, tol, DEFAULT_BLOCH_BUDGET)?;
        if !res.converged {
            return Err(Error::NoConvergence {
                estimate: res.value,
                error_estimate: res.error_estimate,
                evaluations: res.evaluations,
            });
        }
        Ok(res.value)
    };

    let norm = run_real(&|p| (psi.a1)(p).norm_sqr() + (psi.a2)(p).norm_sqr())?;
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { norm });
    }

    let nz = run_real(&|p| (psi.a1)(p).norm_sqr() - (psi.a2)(p).norm_sqr())?;

    let cross_domain = SphericalDomain {
        r_max: SUPPORT_FACTOR * w,
        weight: w,
        integrand: |r: f64, theta: f64, phi: f64| {
            let p = cartesian(r, theta, phi);
            (psi.a1)(p) * (psi.a2)(p).conj() * inv_envelope(r)
        },
    };
    let cross = integrate_spherical(&cross_domain, tol, DEFAULT_BLOCH_BUDGET)?;
    if !cross.converged {
        return Err(Error::NoConvergence {
            estimate: cross.value.norm(),
            error_estimate: cross.error_estimate,
            evaluations: cross.evaluations,
        });
    }

    BlochVector::new(
        2.0 * cross.value.re,
        -2.0 * cross.value.im,
        clamp_modulus(nz),
    )
}

/// Spin entropy (nats) of the boosted packet from the cubature route.
pub fn peres_entropy_exact(packet: &GaussianPacket, boost: &BoostParams, tol: f64) -> Result<f64> {
    let nz = nz_prime_quadrature(packet, boost, tol)?;
    entropy_from_modulus(nz)
}

/// Leading small-width entropy, S = t (1 - ln t) with
/// t = (w^2/8)(gamma - 1)/(gamma + 1); returns 0 at t = 0.
pub fn peres_entropy_leading(packet: &GaussianPacket, boost: &BoostParams) -> f64 {
    let g = boost.gamma();
    let t = packet.wtilde() * packet.wtilde() / 8.0 * (g - 1.0) / (g + 1.0);
    if t == 0.0 {
        0.0
    } else {
        t * (1.0 - t.ln())
    }
}
