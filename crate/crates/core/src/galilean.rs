//! Two-level particle in a box under a Galilean boost with a mass
//! operator that carries the internal energy.
//!
//! The prepared state is an equal superposition of two internal levels
//! E0, E1 sharing one momentum mode p_n = 2 pi n / L (hbar = 1). A boost
//! of velocity v shifts each branch by M_j v where the effective mass
//!
//! ```text
//! M_j = m + E_j / c^2
//! ```
//!
//! differs between branches, entangling the internal qubit with the
//! momentum. Tracing out the momentum leaves a 2x2 state whose
//! off-diagonal coherence is the overlap
//!
//! ```text
//! f(v) = exp(i x) sin(x) / x,    x = v L eps / (2 c^2)
//! ```
//!
//! with eps = E1 - E0, so the entropy is the binary form in |f| and dies
//! off as c^-4 at fixed v: the c -> infinity limit restores exact
//! Galilean invariance of the reduced state.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::{entropy_from_modulus, Error, QubitDensityMatrix, Result};

/// Particle-in-a-box parameters with an internal two-level system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxModel {
    mass: f64,
    e0: f64,
    e1: f64,
    length: f64,
    c: f64,
    mode: i64,
}

impl BoxModel {
    /// Validates mass, length, c positive, energies finite with
    /// 0 <= e0 <= e1. Equal levels are allowed: eps = 0 is the separable
    /// control case every consumer of this model exercises.
    pub fn new(mass: f64, e0: f64, e1: f64, length: f64, c: f64, mode: i64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("length", length), ("c", c)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be finite and positive",
                });
            }
        }
        if !e0.is_finite() || e0 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "e0",
                value: e0,
                reason: "must be finite and non-negative",
            });
        }
        if !e1.is_finite() || e1 < e0 {
            return Err(Error::InvalidParameter {
                name: "e1",
                value: e1,
                reason: "must be finite and at least e0",
            });
        }
        Ok(BoxModel {
            mass,
            e0,
            e1,
            length,
            c,
            mode,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn e1(&self) -> f64 {
        self.e1
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn mode(&self) -> i64 {
        self.mode
    }

    /// Level splitting eps = E1 - E0 >= 0.
    pub fn epsilon(&self) -> f64 {
        self.e1 - self.e0
    }

    /// Momentum eigenvalue of the prepared mode, p_n = 2 pi n / L.
    pub fn momentum(&self) -> f64 {
        2.0 * PI * self.mode as f64 / self.length
    }

    /// Phase argument x = v L eps / (2 c^2) of the overlap.
    pub fn overlap_argument(&self, v: f64) -> f64 {
        v * self.length * self.epsilon() / (2.0 * self.c * self.c)
    }
}

/// Effective masses (M0, M1) = (m + E0/c^2, m + E1/c^2).
pub fn mass_operator_eigenvalues(model: &BoxModel) -> (f64, f64) {
    let c2 = model.c() * model.c();
    (model.mass() + model.e0() / c2, model.mass() + model.e1() / c2)
}

/// One energy branch of the boosted state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostedBranch {
    pub energy: f64,
    pub momentum: f64,
    pub amplitude: f64,
}

/// The prepared superposition after a boost: branch j sits at momentum
/// p_n + M_j v with amplitude 1/sqrt(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostedBoxState {
    pub branches: [BoostedBranch; 2],
}

impl BoostedBoxState {
    /// Applies a further boost; branch momenta shift by M_j v again, so
    /// boosts compose additively in v.
    pub fn then_boost(&self, model: &BoxModel, v: f64) -> BoostedBoxState {
        let (m0, m1) = mass_operator_eigenvalues(model);
        let mut next = *self;
        next.branches[0].momentum += m0 * v;
        next.branches[1].momentum += m1 * v;
        next
    }
}

/// Boosts the prepared state by velocity v (must be finite).
pub fn boosted_state(model: &BoxModel, v: f64) -> BoostedBoxState {
    let (m0, m1) = mass_operator_eigenvalues(model);
    let p = model.momentum();
    BoostedBoxState {
        branches: [
            BoostedBranch {
                energy: model.e0(),
                momentum: p + m0 * v,
                amplitude: FRAC_1_SQRT_2,
            },
            BoostedBranch {
                energy: model.e1(),
                momentum: p + m1 * v,
                amplitude: FRAC_1_SQRT_2,
            },
        ],
    }
}

/// sin(x)/x with the removable singularity filled in; the Taylor branch
/// avoids the 0/0 cancellation below |x| = 1e-4.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Overlap of the two boosted branch wavefunctions,
/// f(v) = exp(i x) sinc(x) with x = v L eps / (2 c^2); f(0) = 1.
pub fn overlap_f(model: &BoxModel, v: f64) -> Complex64 {
    let x = model.overlap_argument(v);
    Complex64::new(0.0, x).exp() * sinc(x)
}

/// |f(v)| = |sinc(x)|, in [0, 1].
pub fn abs_f(model: &BoxModel, v: f64) -> f64 {
    sinc(model.overlap_argument(v)).abs().min(1.0)
}

/// 1 - |f(v)| without cancellation: for |x| < 0.1 the deficit is summed
/// from its own series x^2/6 - x^4/120 + x^6/5040 - x^8/362880 (next
/// term < 3e-18), which stays accurate where 1 - |f| underflows the
/// spacing of f64 around 1.
pub fn one_minus_abs_f(model: &BoxModel, v: f64) -> f64 {
    let x = model.overlap_argument(v);
    if x.abs() < 0.1 {
        let x2 = x * x;
        x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    } else {
        1.0 - abs_f(model, v)
    }
}

/// Small-velocity truncation |f| ~ 1 - (eps^2 L^2 / (24 c^2)) beta^2.
pub fn abs_f_small_beta(model: &BoxModel, beta: f64) -> f64 {
    let el = model.epsilon() * model.length();
    1.0 - el * el / (24.0 * model.c() * model.c()) * beta * beta
}

/// Reduced state of the internal qubit in the {E0, E1} basis after a
/// boost: diagonal 1/2, off-diagonal f/2 and conj(f)/2, eigenvalues
/// (1 +- |f|)/2.
pub fn reduced_density_matrix(model: &BoxModel, v: f64) -> QubitDensityMatrix {
    let f = overlap_f(model, v);
    let half = Complex64::new(0.5, 0.0);
    QubitDensityMatrix::new([[half, 0.5 * f], [0.5 * f.conj(), half]])
        .expect("overlap coherence always yields a valid density matrix")
}

/// Entropy (nats) of the boosted reduced state; zero iff x = 0 mod pi
/// with |f| = 1 only at x = 0, in particular zero whenever eps = 0 or
/// v = 0, and vanishing as c^-4 toward the Galilean limit.
pub fn galilean_entropy(model: &BoxModel, v: f64) -> f64 {
    entropy_from_modulus(abs_f(model, v)).expect("|f| lies in [0, 1]")
}
