//! Command-line front end for the boosted-spin entropy library.
//!
//! Exit codes: 0 success, 1 verify-check failures, 2 usage errors,
//! 3 quadrature non-convergence, 4 I/O errors.

mod report;
mod sweep;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use boost_entropy::relativistic::{self, nz_prime_quadrature_result};
use boost_entropy::{
    abs_f, boost_from_beta, entropy_comparison, entropy_from_modulus, galilean_entropy,
    nz_prime_series, overlap_f, peres_entropy_leading, reduced_density_matrix,
    BoxModel, Error as LibError, GaussianPacket, SeriesOrder,
};
use clap::{Parser, Subcommand};

use report::{Format, Table, Unit, Value};
use sweep::{allowed_params, build_grid, Regime, Scale};
use verify::VerifyOpts;

#[derive(Parser)]
#[command(name = "boost-entropy", version, about = "Spin entropy generated by boosts")]
struct Cli {
    /// Quadrature tolerance; overrides BOOST_ENTROPY_TOL (default 1e-8)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Unit for entropy columns
    #[arg(long, global = true, value_enum, default_value_t = Unit::Nats)]
    unit: Unit,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the table to PATH instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of a boosted Gaussian packet
    Relativistic {
        /// Packet momentum width in units of mc
        #[arg(long, allow_hyphen_values = true)]
        wtilde: f64,
        /// Boost velocity over c
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Integrand evaluation budget
        #[arg(long, default_value_t = relativistic::DEFAULT_NZ_BUDGET)]
        max_evals: u64,
    },
    /// Entropy of a boosted two-level particle in a box
    Galilean {
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Lower internal energy level
        #[arg(long, default_value_t = 0.0)]
        e0: f64,
        /// Upper internal energy level
        #[arg(long)]
        e1: f64,
        /// Box length
        #[arg(long)]
        length: f64,
        /// Effective speed of light
        #[arg(long)]
        c: f64,
        /// Boost velocity
        #[arg(long, allow_hyphen_values = true)]
        v: f64,
        /// Spatial mode number
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        mode: i64,
    },
    /// Match a box model onto a packet and compare the two entropies
    Compare {
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 0.0)]
        e0: f64,
        #[arg(long)]
        e1: f64,
        #[arg(long)]
        length: f64,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        mode: i64,
        /// Velocities over c to tabulate
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0.0,0.005,0.01,0.02,0.05"
        )]
        betas: Vec<f64>,
    },
    /// Tabulate any regime along a one-parameter grid
    Sweep {
        #[arg(long, value_enum)]
        regime: Regime,
        /// Which parameter the grid drives
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        start: f64,
        #[arg(long, allow_hyphen_values = true)]
        stop: f64,
        /// Number of grid points, endpoints included
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Scale::Linear)]
        scale: Scale,
        #[arg(long)]
        wtilde: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 0.0)]
        e0: f64,
        #[arg(long)]
        e1: Option<f64>,
        #[arg(long)]
        length: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<f64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        mode: i64,
        #[arg(long, default_value_t = relativistic::DEFAULT_NZ_BUDGET)]
        max_evals: u64,
    },
    /// Run the built-in cross-checks and report pass/fail per check
    Verify {
        /// Test-only hook: offset added to the polarization integrand
        #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
        perturb_g: f64,
    },
}

enum CliError {
    Usage(String),
    Convergence(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Convergence(m) | CliError::Io(m) => m,
        }
    }
}

fn lib_err(e: LibError) -> CliError {
    match e {
        LibError::NoConvergence { .. } => CliError::Convergence(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn finite(name: &str, value: f64) -> Result<f64, CliError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Usage(format!("--{name} must be finite, got {value}")))
    }
}

fn required(name: &str, value: Option<f64>) -> Result<f64, CliError> {
    match value {
        Some(x) => finite(name, x),
        None => Err(CliError::Usage(format!("--{name} is required here"))),
    }
}

/// Flag wins over BOOST_ENTROPY_TOL wins over the 1e-8 default.
fn resolve_tol(flag: Option<f64>) -> Result<f64, CliError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("BOOST_ENTROPY_TOL") {
            Ok(s) => s.trim().parse::<f64>().map_err(|_| {
                CliError::Usage(format!("BOOST_ENTROPY_TOL is not a number: {s:?}"))
            })?,
            Err(std::env::VarError::NotPresent) => 1e-8,
            Err(e) => return Err(CliError::Usage(format!("BOOST_ENTROPY_TOL: {e}"))),
        },
    };
    if !tol.is_finite() || !(1e-13..=1e-2).contains(&tol) {
        return Err(CliError::Usage(format!(
            "tolerance must lie in [1e-13, 1e-2], got {tol}"
        )));
    }
    Ok(tol)
}

const RELATIVISTIC_COLUMNS: [&str; 10] = [
    "wtilde",
    "beta",
    "nz_quadrature",
    "nz_series2",
    "nz_series4",
    "entropy_exact",
    "entropy_leading",
    "quad_error",
    "evaluations",
    "status",
];

/// Builds one packet row; the flag reports quadrature convergence.
fn relativistic_row(
    wtilde: f64,
    beta: f64,
    tol: f64,
    budget: u64,
) -> Result<(Vec<Value>, bool), CliError> {
    let packet = GaussianPacket::new(wtilde).map_err(lib_err)?;
    let b = boost_from_beta(beta).map_err(lib_err)?;
    let res = nz_prime_quadrature_result(&packet, &b, tol, budget).map_err(lib_err)?;
    let entropy = entropy_from_modulus(res.value).map_err(lib_err)?;
    let row = vec![
        Value::F64(wtilde),
        Value::F64(beta),
        Value::F64(res.value),
        Value::F64(nz_prime_series(&packet, &b, SeriesOrder::Two)),
        Value::F64(nz_prime_series(&packet, &b, SeriesOrder::Four)),
        Value::F64(entropy),
        Value::F64(peres_entropy_leading(&packet, &b)),
        Value::F64(res.error_estimate),
        Value::U64(res.evaluations),
        Value::str(if res.converged { "ok" } else { "no-convergence" }),
    ];
    Ok((row, res.converged))
}

const GALILEAN_COLUMNS: [&str; 15] = [
    "mass",
    "e0",
    "e1",
    "length",
    "c",
    "mode",
    "v",
    "x",
    "f_real",
    "f_imag",
    "abs_f",
    "eigenvalue_hi",
    "eigenvalue_lo",
    "entropy",
    "status",
];

fn galilean_row(model: &BoxModel, v: f64) -> Vec<Value> {
    let f = overlap_f(model, v);
    let (hi, lo) = reduced_density_matrix(model, v).eigenvalues();
    vec![
        Value::F64(model.mass()),
        Value::F64(model.e0()),
        Value::F64(model.e1()),
        Value::F64(model.length()),
        Value::F64(model.c()),
        Value::I64(model.mode()),
        Value::F64(v),
        Value::F64(model.overlap_argument(v)),
        Value::F64(f.re),
        Value::F64(f.im),
        Value::F64(abs_f(model, v)),
        Value::F64(hi),
        Value::F64(lo),
        Value::F64(galilean_entropy(model, v)),
        Value::str("ok"),
    ]
}

const COMPARE_COLUMNS: [&str; 8] = [
    "beta",
    "galilean_entropy",
    "relativistic_entropy",
    "relativistic_entropy_leading",
    "ratio",
    "one_minus_abs_f",
    "one_minus_nz_leading",
    "status",
];

fn model_params(model: &BoxModel) -> Vec<(&'static str, Value)> {
    vec![
        ("mass", Value::F64(model.mass())),
        ("e0", Value::F64(model.e0())),
        ("e1", Value::F64(model.e1())),
        ("length", Value::F64(model.length())),
        ("c", Value::F64(model.c())),
        ("mode", Value::I64(model.mode())),
    ]
}

fn compare_table(model: &BoxModel, betas: &[f64], tol: f64) -> Result<Table, CliError> {
    for &beta in betas {
        finite("betas", beta)?;
    }
    let m = entropy_comparison(model, betas, tol).map_err(lib_err)?;
    let rows = m
        .rows
        .iter()
        .map(|r| {
            vec![
                Value::F64(r.beta),
                Value::F64(r.galilean_entropy),
                Value::F64(r.relativistic_entropy),
                Value::F64(r.relativistic_entropy_leading),
                Value::F64(r.ratio),
                Value::F64(r.one_minus_abs_f),
                Value::F64(r.one_minus_nz_leading),
                Value::str("ok"),
            ]
        })
        .collect();
    let mut params = model_params(model);
    params.push(("wtilde_equiv", Value::F64(m.wtilde_equiv)));
    params.push(("leading_mismatch", Value::F64(m.leading_mismatch)));
    Ok(Table {
        params,
        columns: COMPARE_COLUMNS.to_vec(),
        rows,
        meta: Vec::new(),
    })
}

/// Renders and writes the table; meta gains tol, version, and unit.
fn emit(
    mut table: Table,
    tol: f64,
    unit: Unit,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    table.meta.push(("tol", Value::F64(tol)));
    table.meta.push(("version", Value::str(env!("CARGO_PKG_VERSION"))));
    table.apply_unit(unit);
    let bytes = table
        .render(format)
        .map_err(|e| CliError::Io(e.to_string()))?;
    match out {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let tol = resolve_tol(cli.tol)?;
    let (unit, format, out) = (cli.unit, cli.format, cli.out.as_ref());

    match cli.command {
        Command::Relativistic {
            wtilde,
            beta,
            max_evals,
        } => {
            finite("wtilde", wtilde)?;
            finite("beta", beta)?;
            let (row, converged) = relativistic_row(wtilde, beta, tol, max_evals)?;
            let table = Table {
                params: vec![
                    ("wtilde", Value::F64(wtilde)),
                    ("beta", Value::F64(beta)),
                    ("max_evals", Value::U64(max_evals)),
                ],
                columns: RELATIVISTIC_COLUMNS.to_vec(),
                rows: vec![row],
                meta: Vec::new(),
            };
            emit(table, tol, unit, format, out)?;
            Ok(if converged { 0 } else { 3 })
        }

        Command::Galilean {
            mass,
            e0,
            e1,
            length,
            c,
            v,
            mode,
        } => {
            for (name, x) in [
                ("mass", mass),
                ("e0", e0),
                ("e1", e1),
                ("length", length),
                ("c", c),
                ("v", v),
            ] {
                finite(name, x)?;
            }
            let model = BoxModel::new(mass, e0, e1, length, c, mode).map_err(lib_err)?;
            let mut params = model_params(&model);
            params.push(("v", Value::F64(v)));
            let table = Table {
                params,
                columns: GALILEAN_COLUMNS.to_vec(),
                rows: vec![galilean_row(&model, v)],
                meta: Vec::new(),
            };
            emit(table, tol, unit, format, out)?;
            Ok(0)
        }

        Command::Compare {
            mass,
            e0,
            e1,
            length,
            c,
            mode,
            betas,
        } => {
            for (name, x) in [
                ("mass", mass),
                ("e0", e0),
                ("e1", e1),
                ("length", length),
                ("c", c),
            ] {
                finite(name, x)?;
            }
            let model = BoxModel::new(mass, e0, e1, length, c, mode).map_err(lib_err)?;
            let table = compare_table(&model, &betas, tol)?;
            emit(table, tol, unit, format, out)?;
            Ok(0)
        }

        Command::Sweep {
            regime,
            param,
            start,
            stop,
            steps,
            scale,
            wtilde,
            beta,
            mass,
            e0,
            e1,
            length,
            c,
            v,
            mode,
            max_evals,
        } => {
            if !allowed_params(regime).contains(&param.as_str()) {
                return Err(CliError::Usage(format!(
                    "cannot sweep {param:?} in this regime; choose one of {:?}",
                    allowed_params(regime)
                )));
            }
            let grid = build_grid(start, stop, steps, scale).map_err(CliError::Usage)?;
            let sweep_params = |fixed: Vec<(&'static str, Value)>| {
                let mut p = vec![
                    ("swept", Value::str(&param)),
                    ("start", Value::F64(start)),
                    ("stop", Value::F64(stop)),
                    ("steps", Value::U64(steps as u64)),
                ];
                p.extend(fixed);
                p
            };

            match regime {
                Regime::Relativistic => {
                    let mut rows = Vec::new();
                    let mut all_converged = true;
                    for &g in &grid {
                        let (w, b) = match param.as_str() {
                            "wtilde" => (g, required("beta", beta)?),
                            _ => (required("wtilde", wtilde)?, g),
                        };
                        let (row, converged) = relativistic_row(w, b, tol, max_evals)?;
                        all_converged &= converged;
                        rows.push(row);
                    }
                    let table = Table {
                        params: sweep_params(vec![("max_evals", Value::U64(max_evals))]),
                        columns: RELATIVISTIC_COLUMNS.to_vec(),
                        rows,
                        meta: Vec::new(),
                    };
                    emit(table, tol, unit, format, out)?;
                    Ok(if all_converged { 0 } else { 3 })
                }

                Regime::Galilean => {
                    let mut rows = Vec::new();
                    for &g in &grid {
                        let pick = |name: &str, fixed: f64| if param == name { g } else { fixed };
                        let pick_req = |name: &'static str, fixed: Option<f64>| {
                            if param == name {
                                Ok(g)
                            } else {
                                required(name, fixed)
                            }
                        };
                        let model = BoxModel::new(
                            pick("mass", mass),
                            pick("e0", e0),
                            pick_req("e1", e1)?,
                            pick_req("length", length)?,
                            pick_req("c", c)?,
                            mode,
                        )
                        .map_err(lib_err)?;
                        rows.push(galilean_row(&model, pick_req("v", v)?));
                    }
                    let table = Table {
                        params: sweep_params(Vec::new()),
                        columns: GALILEAN_COLUMNS.to_vec(),
                        rows,
                        meta: Vec::new(),
                    };
                    emit(table, tol, unit, format, out)?;
                    Ok(0)
                }

                Regime::Compare => {
                    let model = BoxModel::new(
                        mass,
                        e0,
                        required("e1", e1)?,
                        required("length", length)?,
                        required("c", c)?,
                        mode,
                    )
                    .map_err(lib_err)?;
                    let mut table = compare_table(&model, &grid, tol)?;
                    let mut params = sweep_params(Vec::new());
                    params.append(&mut table.params);
                    table.params = params;
                    emit(table, tol, unit, format, out)?;
                    Ok(0)
                }
            }
        }

        Command::Verify { perturb_g } => {
            finite("perturb-g", perturb_g)?;
            let failures = verify::run(&VerifyOpts { tol, perturb_g });
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    };
    std::process::exit(code);
}
