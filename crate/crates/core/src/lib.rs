//! Spin entropy of boosted wavepackets.
//!
//! A massive spin-1/2 particle whose spin and momentum start out as a
//! product state does not keep that structure for a moving observer: the
//! boost rotates the spin by a momentum-dependent angle, so tracing out
//! momentum leaves a mixed spin state with nonzero von Neumann entropy.
//! This crate computes that entropy for two models:
//!
//! * [`relativistic`]: a Gaussian wavepacket under a Lorentz boost, where
//!   the mixing comes from the momentum dependence of the Wigner rotation.
//!   The boosted polarization is an explicit three-dimensional momentum
//!   integral, evaluated by adaptive cubature or by its small-width series.
//! * [`galilean`]: a particle in a box prepared in an equal superposition
//!   of two internal energy levels and viewed from a frame moving at speed
//!   v. The mass-energy equivalence makes the two branches pick up
//!   different momentum shifts, and the reduced two-level state has a
//!   closed-form overlap `f(v)`.
//!
//! [`compare`] maps the box parameters onto an equivalent packet width so
//! the two regimes can be checked against each other, and [`quad`] holds
//! the deterministic adaptive cubature both models share. Entropies are
//! natural-log (nats) throughout; divide by ln 2 for bits.

pub mod compare;
pub mod core;
pub mod galilean;
pub mod quad;
pub mod relativistic;

pub use crate::core::{
    boost_from_beta, entropy_from_bloch, entropy_from_density_matrix, entropy_from_modulus,
    BlochVector, BoostParams, QubitDensityMatrix,
};
pub use crate::compare::{entropy_comparison, match_box_to_packet, ComparisonRow, RegimeMatch};
pub use crate::galilean::{
    abs_f, abs_f_small_beta, boosted_state, galilean_entropy, mass_operator_eigenvalues,
    one_minus_abs_f, overlap_f, reduced_density_matrix, BoostedBoxState, BoxModel,
};
pub use crate::quad::{integrate_spherical, QuadResult, SphericalDomain};
pub use crate::relativistic::{
    bloch_from_amplitudes, boosted_gaussian_amplitudes, g_of_r, gaussian_rest_amplitudes,
    nz_prime_quadrature, nz_prime_series, nz_prime_small_beta, peres_entropy_exact,
    peres_entropy_leading, wigner_boost_amplitudes, GaussianPacket, SeriesOrder,
    SpinorAmplitudes, WignerFactors,
};

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A boost velocity with |beta| >= 1 has no finite Lorentz factor.
    #[error("superluminal boost: |beta| = {beta} must be < 1")]
    SuperluminalBoost { beta: f64 },

    /// A Bloch norm or overlap modulus outside [0, 1 + slack]. Values in
    /// (1, 1 + slack] are clamped by the callers, so reaching this error
    /// means the input was not a physical modulus.
    #[error("modulus {value} outside [0, 1 + {slack:e}]")]
    ModulusOutOfRange { value: f64, slack: f64 },

    /// A constructor or operation argument outside its documented domain.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A 2x2 matrix that is not a density matrix to within `tol`.
    #[error("density matrix violates {what}: deviation {deviation:e} exceeds {tol:e}")]
    InvalidDensityMatrix {
        what: &'static str,
        deviation: f64,
        tol: f64,
    },

    /// Adaptive cubature exhausted its evaluation budget before reaching
    /// the requested tolerance. The best estimate is retained.
    #[error(
        "quadrature did not converge: estimate {estimate} (error {error_estimate:e}) \
         after {evaluations} evaluations"
    )]
    NoConvergence {
        estimate: f64,
        error_estimate: f64,
        evaluations: u64,
    },

    /// Spinor amplitudes whose norm integral is not 1.
    #[error("spinor amplitudes not normalized: norm integral = {norm}")]
    NotNormalized { norm: f64 },

    /// Degenerate levels (epsilon = 0) admit no equivalent packet width.
    #[error("regime match undefined for degenerate levels (E1 = E0)")]
    DegenerateMatch,
}

pub type Result<T> = std::result::Result<T, Error>;
