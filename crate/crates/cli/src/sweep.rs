//! Parameter grids for the `sweep` subcommand.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    Relativistic,
    Galilean,
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

/// Names accepted by `--param` for each regime.
pub fn allowed_params(regime: Regime) -> &'static [&'static str] {
    match regime {
        Regime::Relativistic => &["wtilde", "beta"],
        Regime::Galilean => &["v", "c", "mass", "e0", "e1", "length"],
        Regime::Compare => &["beta"],
    }
}

/// Builds the swept values, endpoints included. Linear grids are evenly
/// spaced; log grids are geometric and demand positive endpoints.
pub fn build_grid(start: f64, stop: f64, steps: usize, scale: Scale) -> Result<Vec<f64>, String> {
    if !start.is_finite() || !stop.is_finite() {
        return Err("sweep endpoints must be finite".to_owned());
    }
    if steps < 2 {
        return Err(format!("sweep needs at least 2 steps, got {steps}"));
    }
    if start == stop {
        return Err("sweep endpoints must differ".to_owned());
    }
    let n = steps - 1;
    let grid = match scale {
        Scale::Linear => (0..steps)
            .map(|i| start + (stop - start) * (i as f64 / n as f64))
            .collect(),
        Scale::Log => {
            if start <= 0.0 || stop <= 0.0 {
                return Err("log sweep endpoints must be positive".to_owned());
            }
            let (ls, le) = (start.ln(), stop.ln());
            (0..steps)
                .map(|i| (ls + (le - ls) * (i as f64 / n as f64)).exp())
                .collect()
        }
    };
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_grid_hits_endpoints_evenly() {
        let g = build_grid(0.0, 1.0, 5, Scale::Linear).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn log_grid_is_geometric() {
        let g = build_grid(1.0, 100.0, 3, Scale::Log).unwrap();
        assert_eq!(g.len(), 3);
        assert!((g[0] - 1.0).abs() < 1e-12);
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert!((g[2] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_grids_are_rejected() {
        assert!(build_grid(1.0, 1.0, 5, Scale::Linear).is_err());
        assert!(build_grid(0.0, 1.0, 1, Scale::Linear).is_err());
        assert!(build_grid(0.0, 1.0, 3, Scale::Log).is_err());
        assert!(build_grid(f64::NAN, 1.0, 3, Scale::Linear).is_err());
    }

    #[test]
    fn regimes_expose_their_sweepable_parameters() {
        assert!(allowed_params(Regime::Relativistic).contains(&"beta"));
        assert!(allowed_params(Regime::Galilean).contains(&"c"));
        assert_eq!(allowed_params(Regime::Compare), &["beta"]);
    }
}
