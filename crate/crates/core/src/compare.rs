//! Matches the boosted-box model to an equivalent Gaussian packet and
//! compares the two entropies at small velocity.
//!
//! Both regimes lose coherence quadratically in beta: the box deficit is
//! 1 - |f| ~ (eps^2 L^2 / (24 c^2)) beta^2 and the packet deficit is
//! 1 - nz' ~ (w^2/16) beta^2. Equating the coefficients fixes the
//! equivalent packet width
//!
//! ```text
//! w_equiv = sqrt(2/3) eps L / c
//! ```
//!
//! and with that match the two entropies agree at leading order in
//! beta^2. The match balances only the quadratic terms: the packet side
//! carries a -5 w^4/64 correction with no box analogue, so the relative
//! mismatch between the deficits is 5 w_equiv^2 / 4, independent of beta
//! at leading order.

use crate::galilean::{galilean_entropy, one_minus_abs_f, BoxModel};
use crate::relativistic::{peres_entropy_exact, peres_entropy_leading, GaussianPacket};
use crate::{boost_from_beta, Error, Result};

/// One velocity point of the regime comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub beta: f64,
    /// Box-model entropy at v = beta c (nats).
    pub galilean_entropy: f64,
    /// Packet entropy at the matched width, by quadrature (nats).
    pub relativistic_entropy: f64,
    /// Leading small-width packet entropy t (1 - ln t) (nats).
    pub relativistic_entropy_leading: f64,
    /// relativistic_entropy / galilean_entropy; 1 by convention at beta = 0.
    pub ratio: f64,
    /// Box coherence deficit 1 - |f|.
    pub one_minus_abs_f: f64,
    /// Packet deficit 1 - nz' at order w^2 with the exact gamma
    /// coefficient beta^2 gamma^2 / (gamma + 1)^2 (no cancellation).
    pub one_minus_nz_leading: f64,
}

/// Result of matching a box model onto a packet and sweeping velocities.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeMatch {
    /// Matched packet width sqrt(2/3) eps L / c.
    pub wtilde_equiv: f64,
    /// Relative size 5 w_equiv^2 / 4 of the first neglected matching
    /// term; the leading-order agreement degrades by this fraction.
    pub leading_mismatch: f64,
    pub rows: Vec<ComparisonRow>,
}

/// Solves the leading-order deficit balance
/// eps^2 L^2 / (24 c^2) = w^2 / 16 for the packet width.
///
/// Errors with [`Error::DegenerateMatch`] when eps = 0: neither regime
/// entangles, and no finite width reproduces that.
pub fn match_box_to_packet(model: &BoxModel) -> Result<f64> {
    if model.epsilon() == 0.0 {
        return Err(Error::DegenerateMatch);
    }
    Ok((2.0 / 3.0_f64).sqrt() * model.epsilon() * model.length() / model.c())
}

/// Compares the two regimes on a velocity grid, each |beta| <= 0.1 so
/// the leading-order match applies. For each beta the box is boosted by
/// v = beta c and the matched packet by beta; `tol` is the relative
/// quadrature tolerance of the packet entropy.
pub fn entropy_comparison(model: &BoxModel, beta_grid: &[f64], tol: f64) -> Result<RegimeMatch> {
    let wtilde = match_box_to_packet(model)?;
    let packet = GaussianPacket::new(wtilde)?;
    for &beta in beta_grid {
        if !beta.is_finite() || beta.abs() > 0.1 {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                reason: "comparison grid is limited to |beta| <= 0.1",
            });
        }
    }

    let w2 = wtilde * wtilde;
    let mut rows = Vec::with_capacity(beta_grid.len());
    for &beta in beta_grid {
        let boost = boost_from_beta(beta)?;
        let v = beta * model.c();
        let s_box = galilean_entropy(model, v);
        let s_packet = peres_entropy_exact(&packet, &boost, tol)?;
        let ratio = if beta == 0.0 { 1.0 } else { s_packet / s_box };
        let g1 = boost.gamma() / (boost.gamma() + 1.0);
        rows.push(ComparisonRow {
            beta,
            galilean_entropy: s_box,
            relativistic_entropy: s_packet,
            relativistic_entropy_leading: peres_entropy_leading(&packet, &boost),
            ratio,
            one_minus_abs_f: one_minus_abs_f(model, v),
            one_minus_nz_leading: beta * beta * g1 * g1 * w2 / 4.0,
        });
    }

    Ok(RegimeMatch {
        wtilde_equiv: wtilde,
        leading_mismatch: 5.0 * w2 / 4.0,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn box_model(e1: f64, length: f64, c: f64) -> BoxModel {
        BoxModel::new(1.0, 0.0, e1, length, c, 0).unwrap()
    }

    #[test]
    fn matched_width_frozen_values() {
        let w = match_box_to_packet(&box_model(1.0, 1.0, 1.0)).unwrap();
        assert_relative_eq!(w, 0.81649658092772603, max_relative = 1e-15);
        let w = match_box_to_packet(&box_model(2.0, 3.0, 4.0)).unwrap();
        assert_relative_eq!(w, 1.5_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn degenerate_split_has_no_match() {
        let m = BoxModel::new(1.0, 0.5, 0.5, 1.0, 1.0, 0).unwrap();
        assert!(matches!(match_box_to_packet(&m), Err(Error::DegenerateMatch)));
        assert!(matches!(
            entropy_comparison(&m, &[0.0, 0.01], 1e-8),
            Err(Error::DegenerateMatch)
        ));
    }

    #[test]
    fn match_balances_the_leading_deficits_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..200 {
            let m = BoxModel::new(
                rng.random_range(0.1..3.0),
                0.0,
                rng.random_range(0.01..4.0),
                rng.random_range(0.1..5.0),
                rng.random_range(0.5..20.0),
                0,
            )
            .unwrap();
            let w = match_box_to_packet(&m).unwrap();
            let lhs = w * w / 16.0;
            let el = m.epsilon() * m.length() / m.c();
            let rhs = el * el / 24.0;
            assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
        }
    }

    #[test]
    fn compton_wavelength_form_of_the_match() {
        // With the Compton wavelength lambda = 2 pi / (m c) and the
        // dimensionful spread w_phys = m c w_equiv, the match reads
        // (eps/c)^2 L^2 / 24 = w_phys^2 lambda^2 / (64 pi^2).
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..100 {
            let mass = rng.random_range(0.1..10.0);
            let m = BoxModel::new(
                mass,
                0.0,
                rng.random_range(0.01..4.0),
                rng.random_range(0.1..5.0),
                rng.random_range(0.5..20.0),
                0,
            )
            .unwrap();
            let wtilde = match_box_to_packet(&m).unwrap();
            let w_phys = mass * m.c() * wtilde;
            let lambda = 2.0 * PI / (mass * m.c());
            let lhs = (m.epsilon() / m.c()).powi(2) * m.length() * m.length() / 24.0;
            let rhs = w_phys * w_phys * lambda * lambda / (64.0 * PI * PI);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
        }
    }

    #[test]
    fn comparison_rows_agree_at_small_beta() {
        let m = box_model(1.0, 1.0, 10.0);
        let grid = [0.0, 0.01, 0.02, 0.03, 0.04, 0.05];
        let rm = entropy_comparison(&m, &grid, 1e-11).unwrap();
        assert_eq!(rm.rows.len(), grid.len());
        assert_eq!(rm.rows[0].ratio, 1.0);
        assert_eq!(rm.rows[0].galilean_entropy, 0.0);

        for pair in rm.rows.windows(2) {
            assert!(pair[1].galilean_entropy > pair[0].galilean_entropy);
            assert!(pair[1].relativistic_entropy > pair[0].relativistic_entropy);
        }
        for row in &rm.rows[1..] {
            assert!(
                (row.ratio - 1.0).abs() <= 0.02,
                "beta {}: ratio {}",
                row.beta,
                row.ratio
            );
            let gap = (row.one_minus_abs_f - row.one_minus_nz_leading).abs();
            assert!(gap <= 0.01 * row.one_minus_nz_leading, "beta {}", row.beta);
            assert!(row.relativistic_entropy_leading > 0.0);
        }
    }

    #[test]
    fn ratio_tends_to_one_for_narrow_matches() {
        // eps L / c = 1e-2 puts the matched width deep in the
        // small-width regime where the entropies must coincide closely.
        let m = box_model(1.0, 1.0, 100.0);
        let rm = entropy_comparison(&m, &[0.02], 1e-12).unwrap();
        assert!(
            (rm.rows[0].ratio - 1.0).abs() <= 2e-3,
            "ratio {}",
            rm.rows[0].ratio
        );
    }

    #[test]
    fn mismatch_indicator_scales_as_matched_width_squared() {
        let coarse = entropy_comparison(&box_model(1.0, 1.0, 1.0), &[0.01], 1e-8).unwrap();
        assert_relative_eq!(coarse.leading_mismatch, 5.0 / 6.0, max_relative = 1e-14);
        let fine = entropy_comparison(&box_model(1.0, 1.0, 10.0), &[0.01], 1e-8).unwrap();
        assert_relative_eq!(
            coarse.leading_mismatch / fine.leading_mismatch,
            100.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn comparison_rejects_relativistic_grid_points() {
        let m = box_model(1.0, 1.0, 10.0);
        assert!(matches!(
            entropy_comparison(&m, &[0.05, 0.2], 1e-8),
            Err(Error::InvalidParameter { name: "beta", .. })
        ));
    }
}
