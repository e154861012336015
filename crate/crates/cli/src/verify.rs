//! Self-check suite behind the `verify` subcommand.
//!
//! Each check recomputes a quantity by an independent route (closed
//! form, symmetry, alternate algorithm, or brute-force integration) and
//! compares against the library. One line is printed per check; the
//! return value is the number of failures.

use boost_entropy::relativistic::{self, nz_prime_quadrature_result};
use boost_entropy::{
    bloch_from_amplitudes, boost_from_beta, boosted_gaussian_amplitudes, entropy_comparison,
    entropy_from_density_matrix, entropy_from_modulus, g_of_r, galilean_entropy,
    integrate_spherical, match_box_to_packet, nz_prime_series, nz_prime_small_beta, overlap_f,
    reduced_density_matrix, wigner_boost_amplitudes, BoostParams, BoxModel, GaussianPacket,
    SeriesOrder, SphericalDomain,
};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct VerifyOpts {
    /// Resolved tolerance; quadrature-backed checks scale with it.
    pub tol: f64,
    /// Test-only hook: constant added to the polarization transfer
    /// factor inside the quadrature-vs-series check. Any nonzero value
    /// must make exactly that check fail.
    pub perturb_g: f64,
}

struct Runner {
    checks: u32,
    failures: u32,
    evaluations: u64,
}

impl Runner {
    fn report(&mut self, name: &str, ok: bool, detail: String) {
        self.checks += 1;
        if ok {
            println!("ok   {name}: {detail}");
        } else {
            self.failures += 1;
            println!("FAIL {name}: {detail}");
        }
    }
}

fn boost(beta: f64) -> BoostParams {
    boost_from_beta(beta).expect("|beta| < 1")
}

fn packet(w: f64) -> GaussianPacket {
    GaussianPacket::new(w).expect("valid width")
}

/// Runs every check and returns the failure count.
pub fn run(opts: &VerifyOpts) -> u32 {
    let mut r = Runner {
        checks: 0,
        failures: 0,
        evaluations: 0,
    };

    boost_roundtrip(&mut r);
    entropy_endpoints(&mut r);
    entropy_monotone(&mut r);
    entropy_leading_law(&mut r);
    quad_normalization(&mut r, opts.tol);
    quad_second_moment(&mut r, opts.tol);
    quad_odd_integrand(&mut r, opts.tol);
    g_rest_identity(&mut r);
    g_amplitude_route(&mut r);
    wigner_identity(&mut r);
    quad_vs_series(&mut r, opts);
    small_beta_consistency(&mut r, opts.tol);
    overlap_oracle(&mut r);
    density_invariants(&mut r);
    galilean_limit(&mut r);
    identification(&mut r);
    bloch_transversality(&mut r);

    println!(
        "verify: {} checks, {} failures, {} integrand evaluations",
        r.checks, r.failures, r.evaluations
    );
    r.failures
}

/// gamma sqrt(1 - beta^2) = 1 and tanh(alpha) = beta.
fn boost_roundtrip(r: &mut Runner) {
    let mut worst = 0.0f64;
    for beta in [0.0, 0.1, 0.6, 0.99, -0.9] {
        let b = boost(beta);
        worst = worst.max((b.gamma() * (1.0 - beta * beta).sqrt() - 1.0).abs());
        worst = worst.max((b.alpha().tanh() - beta).abs());
    }
    r.report(
        "boost-roundtrip",
        worst <= 1e-12,
        format!("max deviation {worst:.2e} (bound 1e-12)"),
    );
}

/// S(1) = 0, S(0) = ln 2, and the closed-form value at r = 1/2.
fn entropy_endpoints(r: &mut Runner) {
    let s1 = entropy_from_modulus(1.0).expect("in range");
    let s0 = entropy_from_modulus(0.0).expect("in range");
    let sh = entropy_from_modulus(0.5).expect("in range");
    let worst = s1
        .abs()
        .max((s0 - std::f64::consts::LN_2).abs())
        .max((sh - 0.56233514461880835).abs());
    r.report(
        "entropy-endpoints",
        worst <= 1e-14,
        format!("max deviation {worst:.2e} (bound 1e-14)"),
    );
}

/// S is strictly decreasing in the Bloch modulus.
fn entropy_monotone(r: &mut Runner) {
    let n = 200;
    let mut prev = f64::INFINITY;
    let mut ok = true;
    for i in 0..=n {
        let m = i as f64 / n as f64;
        let s = entropy_from_modulus(m).expect("in range");
        if s >= prev {
            ok = false;
        }
        prev = s;
    }
    r.report(
        "entropy-monotone",
        ok,
        format!("strictly decreasing on {} point grid", n + 1),
    );
}

/// S(1 - 2t) = t (1 - ln t) + O(t^2) near the pure state.
fn entropy_leading_law(r: &mut Runner) {
    let mut worst_ratio = 0.0f64;
    for t in [1e-4, 1e-5, 1e-6] {
        let s = entropy_from_modulus(1.0 - 2.0 * t).expect("in range");
        let lead = t * (1.0 - t.ln());
        worst_ratio = worst_ratio.max((s - lead).abs() / (t * t));
    }
    r.report(
        "entropy-leading-law",
        worst_ratio <= 10.0,
        format!("max |S - t(1 - ln t)| = {worst_ratio:.2} t^2 (bound 10 t^2)"),
    );
}

/// The weighted unit integrand integrates to 1.
fn quad_normalization(r: &mut Runner, tol: f64) {
    let domain = SphericalDomain {
        r_max: 12.0,
        weight: 1.0,
        integrand: |_r: f64, _t: f64, _p: f64| 1.0,
    };
    match integrate_spherical::<f64, _>(&domain, tol, 50_000_000) {
        Ok(res) => {
            r.evaluations += res.evaluations;
            let dev = (res.value - 1.0).abs();
            r.report(
                "quad-normalization",
                res.converged && dev <= 10.0 * tol,
                format!("|I - 1| = {dev:.2e} (bound {:.2e})", 10.0 * tol),
            );
        }
        Err(e) => r.report("quad-normalization", false, format!("error: {e}")),
    }
}

/// Second moment of the weight: <r^2> = 3 w^2 / 2.
fn quad_second_moment(r: &mut Runner, tol: f64) {
    let w = 0.7;
    let domain = SphericalDomain {
        r_max: 12.0 * w,
        weight: w,
        integrand: |rr: f64, _t: f64, _p: f64| rr * rr,
    };
    match integrate_spherical::<f64, _>(&domain, tol, 50_000_000) {
        Ok(res) => {
            r.evaluations += res.evaluations;
            let expect = 1.5 * w * w;
            let dev = (res.value - expect).abs() / expect;
            r.report(
                "quad-second-moment",
                res.converged && dev <= 10.0 * tol,
                format!("relative deviation {dev:.2e} (bound {:.2e})", 10.0 * tol),
            );
        }
        Err(e) => r.report("quad-second-moment", false, format!("error: {e}")),
    }
}

/// An odd integrand (z component) integrates to zero.
fn quad_odd_integrand(r: &mut Runner, tol: f64) {
    let domain = SphericalDomain {
        r_max: 12.0,
        weight: 1.0,
        integrand: |rr: f64, theta: f64, _p: f64| rr * theta.cos(),
    };
    match integrate_spherical::<f64, _>(&domain, tol, 50_000_000) {
        Ok(res) => {
            r.evaluations += res.evaluations;
            let dev = res.value.abs();
            let bound = 10.0 * tol;
            r.report(
                "quad-odd-integrand",
                dev <= bound,
                format!("|I| = {dev:.2e} (bound {bound:.2e})"),
            );
        }
        Err(e) => r.report("quad-odd-integrand", false, format!("error: {e}")),
    }
}

/// G = 1 identically when the boost is trivial.
fn g_rest_identity(r: &mut Runner) {
    let b = boost(0.0);
    let mut worst = 0.0f64;
    for &p in &SAMPLE_POINTS {
        worst = worst.max((g_of_r(p, &b) - 1.0).abs());
    }
    r.report(
        "g-rest-identity",
        worst <= 1e-15,
        format!("max |G - 1| = {worst:.2e} at beta = 0 (bound 1e-15)"),
    );
}

const SAMPLE_POINTS: [[f64; 3]; 6] = [
    [0.0, 0.0, 0.0],
    [0.3, -0.4, 1.2],
    [-1.5, 0.2, 0.7],
    [2.0, 1.0, -0.5],
    [0.0, 0.0, 3.0],
    [-0.1, 2.4, -1.9],
];

/// G from the closed form matches the spinor-amplitude route
/// (|b1|^2 - |b2|^2) / ((p0 + 1)(q0 + 1)).
fn g_amplitude_route(r: &mut Runner) {
    let mut worst = 0.0f64;
    for beta in [0.3, -0.7, 0.9] {
        let b = boost(beta);
        for &p in &SAMPLE_POINTS {
            let wf = wigner_boost_amplitudes(p, &b);
            let p0 = (1.0 + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            let q0 = b.gamma() * (p0 - b.beta() * p[0]);
            let via_amps = (wf.b1.norm_sqr() - wf.b2.norm_sqr()) / ((p0 + 1.0) * (q0 + 1.0));
            let g = g_of_r(p, &b);
            worst = worst.max((g - via_amps).abs() / g.abs().max(1e-3));
        }
    }
    r.report(
        "g-amplitude-route",
        worst <= 1e-12,
        format!("max relative gap {worst:.2e} (bound 1e-12)"),
    );
}

/// K^2 (|b1|^2 + |b2|^2) = p0 / q0: the boosted spinor stays normalized.
fn wigner_identity(r: &mut Runner) {
    let mut worst = 0.0f64;
    for beta in [0.2, -0.6, 0.95] {
        let b = boost(beta);
        for &p in &SAMPLE_POINTS {
            let wf = wigner_boost_amplitudes(p, &b);
            let p0 = (1.0 + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            let q0 = b.gamma() * (p0 - b.beta() * p[0]);
            let lhs = wf.k * wf.k * (wf.b1.norm_sqr() + wf.b2.norm_sqr());
            worst = worst.max((lhs - p0 / q0).abs() * q0 / p0);
        }
    }
    r.report(
        "wigner-identity",
        worst <= 1e-12,
        format!("max relative gap {worst:.2e} (bound 1e-12)"),
    );
}

/// Quadrature nz' matches the w^4 series at small width. Carries the
/// perturbation hook: a constant added to G shifts the integral by the
/// same constant and must trip the bound.
fn quad_vs_series(r: &mut Runner, opts: &VerifyOpts) {
    let tol = (0.1 * opts.tol).min(1e-9);
    let perturb = opts.perturb_g;
    let mut worst_ratio = 0.0f64;
    let mut ok = true;
    let mut detail = String::new();
    for (w, beta) in [(0.1f64, 0.6), (0.05, 0.99)] {
        let b = boost(beta);
        let domain = SphericalDomain {
            r_max: (12.0 * w).max(3.0),
            weight: w,
            integrand: move |rr: f64, theta: f64, phi: f64| {
                let st = theta.sin();
                let p = [rr * st * phi.cos(), rr * st * phi.sin(), rr * theta.cos()];
                g_of_r(p, &b) + perturb
            },
        };
        match integrate_spherical::<f64, _>(&domain, tol, relativistic::DEFAULT_NZ_BUDGET) {
            Ok(res) => {
                r.evaluations += res.evaluations;
                let series = nz_prime_series(&packet(w), &b, SeriesOrder::Four);
                let bound = 10.0 * w.powi(6) + 100.0 * tol;
                let dev = (res.value - series).abs();
                if !res.converged || dev > bound {
                    ok = false;
                }
                worst_ratio = worst_ratio.max(dev / bound);
                detail = format!("worst |quad - series| at {:.2} of bound", worst_ratio);
            }
            Err(e) => {
                ok = false;
                detail = format!("error: {e}");
            }
        }
    }
    r.report("quad-vs-series", ok, detail);
}

/// Quadrature nz' matches the small-velocity closed form
/// 1 - (w^2/16 - 5 w^4/64) beta^2 up to the first neglected order.
fn small_beta_consistency(r: &mut Runner, tol: f64) {
    let (w, beta) = (0.1, 0.05);
    let quad_tol = (0.1 * tol).min(1e-10);
    match nz_prime_quadrature_result(
        &packet(w),
        &boost(beta),
        quad_tol,
        relativistic::DEFAULT_NZ_BUDGET,
    ) {
        Ok(res) => {
            r.evaluations += res.evaluations;
            let approx = nz_prime_small_beta(&packet(w), beta);
            let bound = w * w * beta.powi(4);
            let dev = (res.value - approx).abs();
            r.report(
                "small-beta-consistency",
                res.converged && dev <= bound,
                format!("|quad - closed form| = {dev:.2e} (bound {bound:.2e})"),
            );
        }
        Err(e) => r.report("small-beta-consistency", false, format!("error: {e}")),
    }
}

/// Composite Simpson on the position-space inner product.
fn simpson_overlap(model: &BoxModel, v: f64) -> Complex64 {
    let k = model.epsilon() * v / (model.c() * model.c());
    let l = model.length();
    let n = 4096 * ((k * l).abs() / 4.0).ceil().max(1.0) as usize;
    let h = l / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=n {
        let wgt = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += wgt * Complex64::new(0.0, k * i as f64 * h).exp();
    }
    acc * h / (3.0 * l)
}

/// The closed-form overlap matches brute-force position-space
/// integration of the same inner product.
fn overlap_oracle(r: &mut Runner) {
    let mut worst = 0.0f64;
    for e1 in [0.5, 2.0, 7.0] {
        for length in [0.7, 1.9] {
            for (c, v) in [(1.0, 0.3), (1.0, 1.1), (3.0, 2.0)] {
                let model = BoxModel::new(1.0, 0.0, e1, length, c, 1).expect("valid model");
                let f = overlap_f(&model, v);
                let oracle = simpson_overlap(&model, v);
                worst = worst.max((f - oracle).norm());
            }
        }
    }
    r.report(
        "overlap-oracle",
        worst <= 1e-10,
        format!("max |f - Simpson| = {worst:.2e} over 18 models (bound 1e-10)"),
    );
}

/// Reduced density matrices are unit-trace, Hermitian, positive, and
/// reproduce the modulus-route entropy.
fn density_invariants(r: &mut Runner) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut ok = true;
    for _ in 0..200 {
        let mass = rng.random_range(0.1..3.0);
        let e0 = rng.random_range(0.0..2.0);
        let e1 = e0 + rng.random_range(0.01..3.0);
        let length = rng.random_range(0.2..5.0);
        let c = rng.random_range(1.0..10.0);
        let mode = rng.random_range(-3..4);
        let v = rng.random_range(-3.0..3.0);
        let model = BoxModel::new(mass, e0, e1, length, c, mode).expect("valid draw");
        let rho = reduced_density_matrix(&model, v);

        let tr = rho.trace();
        worst = worst.max((tr.re - 1.0).abs()).max(tr.im.abs());
        worst = worst.max((rho.entry(0, 1) - rho.entry(1, 0).conj()).norm());
        let (hi, lo) = rho.eigenvalues();
        if !((-1e-12..=1.0 + 1e-12).contains(&lo) && (0.0..=1.0 + 1e-12).contains(&hi)) {
            ok = false;
        }
        worst = worst.max((hi + lo - 1.0).abs());
        worst = worst.max((entropy_from_density_matrix(&rho) - galilean_entropy(&model, v)).abs());
    }
    r.report(
        "density-invariants",
        ok && worst <= 1e-12,
        format!("200 draws, max deviation {worst:.2e} (bound 1e-12)"),
    );
}

/// The coherence deficit 1 - |f| falls off as c^-4 at fixed velocity.
fn galilean_limit(r: &mut Runner) {
    let v = 0.5;
    let mut pts = Vec::new();
    for c in [10.0, 100.0, 1000.0] {
        let model = BoxModel::new(1.0, 0.0, 2.0, 1.0, c, 0).expect("valid model");
        let deficit = boost_entropy::one_minus_abs_f(&model, v);
        pts.push((c.ln(), deficit.ln()));
    }
    let slope = (pts[2].1 - pts[0].1) / (pts[2].0 - pts[0].0);
    r.report(
        "galilean-limit",
        (slope + 4.0).abs() <= 0.1,
        format!("log-log slope {slope:.6} (expected -4 within 0.1)"),
    );
}

/// Matching a box onto a packet makes the two entropies agree at small
/// velocity, and the matching residual scale drops 100x when c rises 10x.
fn identification(r: &mut Runner) {
    let model = BoxModel::new(1.0, 0.0, 1.0, 1.0, 10.0, 0).expect("valid model");
    let wide = BoxModel::new(1.0, 0.0, 1.0, 1.0, 100.0, 0).expect("valid model");
    let mut ok = true;
    let detail;
    match entropy_comparison(&model, &[0.01, 0.02], 1e-12) {
        Ok(m) => {
            let mut worst = 0.0f64;
            for row in &m.rows {
                worst = worst.max((row.ratio - 1.0).abs());
            }
            if worst > 0.02 {
                ok = false;
            }
            let scale = m.leading_mismatch
                / match_box_to_packet(&wide).map(|w| 1.25 * w * w).unwrap_or(f64::NAN);
            if !((scale - 100.0).abs() <= 1e-10) {
                ok = false;
            }
            detail =
                format!("max |ratio - 1| = {worst:.2e} (bound 2e-2), residual scaling {scale:.6}");
        }
        Err(e) => {
            ok = false;
            detail = format!("error: {e}");
        }
    }
    r.report("identification", ok, detail);
}

/// The boosted Bloch vector stays on the boost axis and its z component
/// matches the direct polarization integral.
fn bloch_transversality(r: &mut Runner) {
    let (w, beta) = (0.2, 0.6);
    let tol = 1e-7;
    let psi = boosted_gaussian_amplitudes(&packet(w), &boost(beta));
    match bloch_from_amplitudes(&psi, tol) {
        Ok(n) => {
            let transverse = n.nx().abs().max(n.ny().abs());
            match nz_prime_quadrature_result(
                &packet(w),
                &boost(beta),
                1e-10,
                relativistic::DEFAULT_NZ_BUDGET,
            ) {
                Ok(res) => {
                    r.evaluations += res.evaluations;
                    let gap = (n.nz() - res.value).abs();
                    r.report(
                        "bloch-transversality",
                        transverse <= tol && gap <= tol,
                        format!("transverse {transverse:.2e}, nz gap {gap:.2e} (bound {tol:.0e})"),
                    );
                }
                Err(e) => r.report("bloch-transversality", false, format!("error: {e}")),
            }
        }
        Err(e) => r.report("bloch-transversality", false, format!("error: {e}")),
    }
}
