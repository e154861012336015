//! Boost kinematics, qubit state types, and von Neumann entropy.
//!
//! Every reduced spin state in this crate is a 2x2 density matrix with
//! eigenvalues (1 +- r)/2, where r is either a Bloch-vector norm or an
//! overlap modulus. Its entropy is
//!
//! ```text
//! S(r) = -(1-r)/2 ln((1-r)/2) - (1+r)/2 ln((1+r)/2)
//! ```
//!
//! in nats. `entropy_from_modulus` is the single place this formula is
//! evaluated; the Bloch and density-matrix entry points reduce to it.

use num_complex::Complex64;

use crate::{Error, Result};

/// Slack above 1 tolerated for a modulus or Bloch norm before clamping to 1.
/// Covers quadrature and rounding overshoot; anything larger is an error.
pub const MODULUS_SLACK: f64 = 1e-9;

/// Eigenvalues below this are treated as exactly zero in x ln x, so the
/// 0 ln 0 = 0 limit is taken instead of producing -inf * 0 = NaN.
pub const EIGENVALUE_FLOOR: f64 = 1e-300;

/// Hermiticity, trace, and positivity tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-12;

/// Lorentz boost parameters along a fixed axis.
///
/// Invariants: |beta| < 1, gamma = 1/sqrt(1 - beta^2) >= 1, and
/// tanh(alpha) = beta. Constructed through [`boost_from_beta`] so the
/// invariants always hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParams {
    beta: f64,
    gamma: f64,
    alpha: f64,
}

impl BoostParams {
    /// Boost velocity in units of c.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Lorentz factor 1/sqrt(1 - beta^2).
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Rapidity, tanh(alpha) = beta.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Builds [`BoostParams`] from beta = v/c.
///
/// Errors with [`Error::SuperluminalBoost`] when |beta| >= 1 or beta is not
/// finite.
pub fn boost_from_beta(beta: f64) -> Result<BoostParams> {
    if !beta.is_finite() || beta.abs() >= 1.0 {
        return Err(Error::SuperluminalBoost { beta });
    }
    Ok(BoostParams {
        beta,
        gamma: 1.0 / (1.0 - beta * beta).sqrt(),
        alpha: beta.atanh(),
    })
}

/// Spin polarization vector, |n| <= 1.
///
/// Norms in (1, 1 + [`MODULUS_SLACK`]] are rescaled onto the unit sphere at
/// construction; larger norms are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    nx: f64,
    ny: f64,
    nz: f64,
}

impl BlochVector {
    pub fn new(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        for (name, v) in [("nx", nx), ("ny", ny), ("nz", nz)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be finite",
                });
            }
        }
        let norm = (nx * nx + ny * ny + nz * nz).sqrt();
        if norm > 1.0 + MODULUS_SLACK {
            return Err(Error::ModulusOutOfRange {
                value: norm,
                slack: MODULUS_SLACK,
            });
        }
        let scale = if norm > 1.0 { 1.0 / norm } else { 1.0 };
        Ok(BlochVector {
            nx: nx * scale,
            ny: ny * scale,
            nz: nz * scale,
        })
    }

    pub fn nx(&self) -> f64 {
        self.nx
    }

    pub fn ny(&self) -> f64 {
        self.ny
    }

    pub fn nz(&self) -> f64 {
        self.nz
    }

    /// Euclidean norm; <= 1 by construction.
    pub fn norm(&self) -> f64 {
        let n = (self.nx * self.nx + self.ny * self.ny + self.nz * self.nz).sqrt();
        n.min(1.0)
    }
}

/// A validated 2x2 density matrix.
///
/// Construction enforces, to within [`DENSITY_TOL`]: Hermiticity, unit
/// trace, and eigenvalues inside [-tol, 1 + tol].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensityMatrix {
    m: [[Complex64; 2]; 2],
}

impl QubitDensityMatrix {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        for row in &m {
            for e in row {
                if !e.re.is_finite() || !e.im.is_finite() {
                    return Err(Error::InvalidDensityMatrix {
                        what: "finiteness",
                        deviation: f64::INFINITY,
                        tol: DENSITY_TOL,
                    });
                }
            }
        }
        let herm_dev = (m[0][1] - m[1][0].conj())
            .norm()
            .max(m[0][0].im.abs())
            .max(m[1][1].im.abs());
        if herm_dev > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix {
                what: "hermiticity",
                deviation: herm_dev,
                tol: DENSITY_TOL,
            });
        }
        let trace_dev = (m[0][0].re + m[1][1].re - 1.0).abs();
        if trace_dev > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix {
                what: "unit trace",
                deviation: trace_dev,
                tol: DENSITY_TOL,
            });
        }
        let rho = QubitDensityMatrix { m };
        let (hi, lo) = rho.eigenvalues();
        if lo < -DENSITY_TOL || hi > 1.0 + DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix {
                what: "positivity",
                deviation: (-lo).max(hi - 1.0),
                tol: DENSITY_TOL,
            });
        }
        Ok(rho)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Eigenvalues (largest, smallest) from the closed 2x2 Hermitian form
    /// (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2). No iterative solver is needed
    /// for a 2x2 Hermitian matrix.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let b = (self.m[0][1] + self.m[1][0].conj()) * 0.5;
        let mean = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        (mean + disc, mean - disc)
    }
}

/// Entropy in nats of a qubit with eigenvalues (1 +- r)/2.
///
/// Accepts r in [0, 1 + [`MODULUS_SLACK`]], clamping the overshoot band to
/// 1; anything else is [`Error::ModulusOutOfRange`]. The r -> 1 limit is 0;
/// the r -> 0 limit is ln 2.
pub fn entropy_from_modulus(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 || r > 1.0 + MODULUS_SLACK {
        return Err(Error::ModulusOutOfRange {
            value: r,
            slack: MODULUS_SLACK,
        });
    }
    let r = r.min(1.0);
    let lam_minus = 0.5 * (1.0 - r);
    let lam_plus = 0.5 * (1.0 + r);
    let mut s = 0.0;
    if lam_minus >= EIGENVALUE_FLOOR {
        s -= lam_minus * lam_minus.ln();
    }
    if lam_plus >= EIGENVALUE_FLOOR {
        // ln(lam_plus) = ln(1 + (r-1)/2); ln_1p keeps the r -> 1 tail exact
        // because r - 1 is computed without cancellation for r in [1/2, 2].
        s -= lam_plus * (0.5 * (r - 1.0)).ln_1p();
    }
    Ok(s)
}

/// Entropy in nats of the state (1 + n . sigma)/2.
///
/// Depends on the polarization only through |n|; the constructor already
/// guarantees |n| <= 1, so this cannot fail.
pub fn entropy_from_bloch(n: &BlochVector) -> f64 {
    entropy_from_modulus(n.norm()).expect("Bloch norm is within [0, 1] by construction")
}

/// Entropy in nats of a validated density matrix, -sum lambda ln lambda.
///
/// Eigenvalues inside the [-tol, 0) validation band are treated as 0.
pub fn entropy_from_density_matrix(rho: &QubitDensityMatrix) -> f64 {
    let (hi, lo) = rho.eigenvalues();
    let mut s = 0.0;
    for lam in [hi.min(1.0), lo.max(0.0)] {
        if lam >= EIGENVALUE_FLOOR {
            s -= lam * lam.ln();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::LN_2;

    // Reference entropies, high-precision evaluations of S(r).
    const S_HALF: f64 = 0.56233514461880835;
    const S_TWO_OVER_PI: f64 = 0.47394663373377752;

    #[test]
    fn boost_identity_at_zero() {
        let b = boost_from_beta(0.0).unwrap();
        assert_eq!(b.beta(), 0.0);
        assert_eq!(b.gamma(), 1.0);
        assert_eq!(b.alpha(), 0.0);
    }

    #[test]
    fn boost_frozen_values() {
        let b = boost_from_beta(0.6).unwrap();
        assert_relative_eq!(b.gamma(), 1.25, max_relative = 1e-15);
        // atanh(0.6) = ln 2
        assert_relative_eq!(b.alpha(), LN_2, max_relative = 1e-15);

        let b = boost_from_beta(0.99).unwrap();
        assert_relative_eq!(b.gamma(), 7.088812050083359, max_relative = 1e-14);
        assert_relative_eq!(b.alpha(), 2.6466524123622462, max_relative = 1e-14);
    }

    #[test]
    fn boost_rapidity_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let beta = rng.random_range(-0.999999..0.999999);
            let b = boost_from_beta(beta).unwrap();
            assert_relative_eq!(b.alpha().tanh(), beta, max_relative = 1e-12);
            assert!(b.gamma() >= 1.0);
        }
    }

    #[test]
    fn boost_rejects_superluminal() {
        for beta in [1.0, -1.0, 1.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                boost_from_beta(beta),
                Err(Error::SuperluminalBoost { .. })
            ));
        }
    }

    #[test]
    fn entropy_endpoints() {
        assert_eq!(entropy_from_modulus(1.0).unwrap(), 0.0);
        assert_relative_eq!(entropy_from_modulus(0.0).unwrap(), LN_2, max_relative = 1e-15);
    }

    #[test]
    fn entropy_frozen_values() {
        assert_relative_eq!(entropy_from_modulus(0.5).unwrap(), S_HALF, max_relative = 1e-14);
        assert_relative_eq!(
            entropy_from_modulus(2.0 / std::f64::consts::PI).unwrap(),
            S_TWO_OVER_PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn entropy_clamps_overshoot_band() {
        assert_eq!(entropy_from_modulus(1.0 + 5e-10).unwrap(), 0.0);
        assert_eq!(entropy_from_modulus(1.0 + 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn entropy_rejects_out_of_range() {
        for r in [-1e-12, -0.5, 1.0 + 2e-9, 2.0, f64::NAN] {
            assert!(matches!(
                entropy_from_modulus(r),
                Err(Error::ModulusOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn entropy_strictly_decreasing_in_modulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let a = rng.random_range(0.0..1.0);
            let b = rng.random_range(0.0..1.0);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if hi - lo < 1e-12 {
                continue;
            }
            let s_lo = entropy_from_modulus(lo).unwrap();
            let s_hi = entropy_from_modulus(hi).unwrap();
            assert!(s_hi < s_lo, "S({hi}) = {s_hi} not below S({lo}) = {s_lo}");
            assert!((0.0..=LN_2 + 1e-15).contains(&s_lo));
        }
    }

    #[test]
    fn entropy_accurate_near_pure_states() {
        // r = 1 - 2t has eigenvalues (1-t, t); S = t(1 - ln t) - t^2/2 + O(t^3).
        // Below t ~ 1e-7 the t^2 truncation term sinks under the rounding
        // of 1 - 2t (about |ln t| eps/2 absolute), so the comparison
        // switches to an absolute noise-floor bound there.
        for &t in &[1e-4, 1e-5, 1e-6] {
            let s = entropy_from_modulus(1.0 - 2.0 * t).unwrap();
            let lead = t * (1.0 - t.ln());
            assert!((s - lead).abs() < 0.6 * t * t, "t={t}: {s} vs {lead}");
        }
        for &t in &[1e-8, 1e-12] {
            let s = entropy_from_modulus(1.0 - 2.0 * t).unwrap();
            let lead = t * (1.0 - t.ln());
            assert!((s - lead).abs() < 5e-15, "t={t}: {s} vs {lead}");
        }
    }

    #[test]
    fn bloch_entropy_matches_modulus_and_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let n = random_bloch(&mut rng);
            let s = entropy_from_bloch(&n);
            assert_relative_eq!(
                s,
                entropy_from_modulus(n.norm()).unwrap(),
                max_relative = 1e-13,
                epsilon = 1e-15
            );
            // Rodrigues rotation about a random axis preserves the entropy.
            let (kx, ky, kz) = random_unit(&mut rng);
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let (c, s_a) = (angle.cos(), angle.sin());
            let dot = kx * n.nx() + ky * n.ny() + kz * n.nz();
            let rx = n.nx() * c + (ky * n.nz() - kz * n.ny()) * s_a + kx * dot * (1.0 - c);
            let ry = n.ny() * c + (kz * n.nx() - kx * n.nz()) * s_a + ky * dot * (1.0 - c);
            let rz = n.nz() * c + (kx * n.ny() - ky * n.nx()) * s_a + kz * dot * (1.0 - c);
            let rotated = BlochVector::new(rx, ry, rz).unwrap();
            assert_relative_eq!(
                entropy_from_bloch(&rotated),
                s,
                max_relative = 1e-11,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn bloch_pure_and_mixed_limits() {
        let up = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(entropy_from_bloch(&up), 0.0);
        let mixed = BlochVector::new(0.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(entropy_from_bloch(&mixed), LN_2, max_relative = 1e-15);
    }

    #[test]
    fn bloch_clamps_and_rejects() {
        let n = BlochVector::new(0.0, 0.0, 1.0 + 1e-10).unwrap();
        assert_eq!(n.norm(), 1.0);
        assert!(matches!(
            BlochVector::new(0.0, 0.0, 1.1),
            Err(Error::ModulusOutOfRange { .. })
        ));
        assert!(matches!(
            BlochVector::new(f64::NAN, 0.0, 0.0),
            Err(Error::InvalidParameter { .. })
        ));
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn density_matrix_interference_form() {
        // rho = [[1/2, f/2], [f*/2, 1/2]] with |f| = 1/2 has eigenvalues
        // (1 +- 1/2)/2 and entropy S(1/2).
        let rho = QubitDensityMatrix::new([[c(0.5, 0.0), c(0.25, 0.0)], [c(0.25, 0.0), c(0.5, 0.0)]])
            .unwrap();
        let (hi, lo) = rho.eigenvalues();
        assert_relative_eq!(hi, 0.75, max_relative = 1e-15);
        assert_relative_eq!(lo, 0.25, max_relative = 1e-15);
        assert_relative_eq!(entropy_from_density_matrix(&rho), S_HALF, max_relative = 1e-14);
    }

    #[test]
    fn density_matrix_pure_and_maximally_mixed() {
        let pure =
            QubitDensityMatrix::new([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]])
                .unwrap();
        assert_eq!(entropy_from_density_matrix(&pure), 0.0);
        let mixed =
            QubitDensityMatrix::new([[c(0.5, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.5, 0.0)]])
                .unwrap();
        assert_relative_eq!(entropy_from_density_matrix(&mixed), LN_2, max_relative = 1e-15);
    }

    #[test]
    fn density_matrix_rejects_invalid() {
        // Non-Hermitian off-diagonal.
        assert!(matches!(
            QubitDensityMatrix::new([[c(0.5, 0.0), c(0.0, 0.1)], [c(0.0, 0.1), c(0.5, 0.0)]]),
            Err(Error::InvalidDensityMatrix { what: "hermiticity", .. })
        ));
        // Trace 1.2.
        assert!(matches!(
            QubitDensityMatrix::new([[c(0.6, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.6, 0.0)]]),
            Err(Error::InvalidDensityMatrix { what: "unit trace", .. })
        ));
        // Hermitian, unit trace, but indefinite.
        assert!(matches!(
            QubitDensityMatrix::new([[c(0.6, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.4, 0.0)]]),
            Err(Error::InvalidDensityMatrix { what: "positivity", .. })
        ));
    }

    #[test]
    fn eigenvalues_match_independent_solver() {
        // Oracle: embed the Hermitian matrix X + iY as the real symmetric
        // [[X, -Y], [Y, X]] and diagonalize with nalgebra. Each eigenvalue
        // of the 2x2 appears twice in the 4x4 spectrum.
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..200 {
            let n = random_bloch(&mut rng);
            let m = [
                [
                    c(0.5 * (1.0 + n.nz()), 0.0),
                    c(0.5 * n.nx(), -0.5 * n.ny()),
                ],
                [c(0.5 * n.nx(), 0.5 * n.ny()), c(0.5 * (1.0 - n.nz()), 0.0)],
            ];
            let rho = QubitDensityMatrix::new(m).unwrap();
            let (hi, lo) = rho.eigenvalues();

            let x = |i: usize, j: usize| m[i][j].re;
            let y = |i: usize, j: usize| m[i][j].im;
            #[rustfmt::skip]
            let embed = nalgebra::Matrix4::new(
                x(0, 0), x(0, 1), -y(0, 0), -y(0, 1),
                x(1, 0), x(1, 1), -y(1, 0), -y(1, 1),
                y(0, 0), y(0, 1),  x(0, 0),  x(0, 1),
                y(1, 0), y(1, 1),  x(1, 0),  x(1, 1),
            );
            let mut eig: Vec<f64> = embed.symmetric_eigen().eigenvalues.iter().copied().collect();
            eig.sort_by(f64::total_cmp);
            assert_relative_eq!(eig[0], lo, max_relative = 1e-10, epsilon = 1e-12);
            assert_relative_eq!(eig[1], lo, max_relative = 1e-10, epsilon = 1e-12);
            assert_relative_eq!(eig[2], hi, max_relative = 1e-10, epsilon = 1e-12);
            assert_relative_eq!(eig[3], hi, max_relative = 1e-10, epsilon = 1e-12);
        }
    }

    fn random_unit(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
        loop {
            let x: f64 = rng.random_range(-1.0..1.0);
            let y: f64 = rng.random_range(-1.0..1.0);
            let z: f64 = rng.random_range(-1.0..1.0);
            let n = (x * x + y * y + z * z).sqrt();
            if n > 1e-3 && n <= 1.0 {
                return (x / n, y / n, z / n);
            }
        }
    }

    fn random_bloch(rng: &mut ChaCha8Rng) -> BlochVector {
        let (x, y, z) = random_unit(rng);
        let r: f64 = rng.random_range(0.0..1.0);
        BlochVector::new(r * x, r * y, r * z).unwrap()
    }
}
