//! Reference-value verification suite: every published numeric claim the
//! library reproduces, bundled so the CLI and the acceptance tests share one
//! implementation.

use crate::chordarc::{chord_arc_constant, PolygonDomain};
use crate::criteria::{
    self, balloon, c_fn, c_star, eta, r0, rho, t_hat, validate_nehari, Disconjugacy,
    NehariFunction,
};
use crate::error::Result;
use crate::expr::AnalyticExpr;
use crate::grid::GridSpec;
use crate::lift::{build_mesh, lift_point, QuadratureSpec};
use crate::schwarzian::{self, HarmonicMapping};
use crate::shear::{self, chord_arc_shear_bound, converse_construction, folding_example};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

const NAMES: [&str; 13] = [
    "origin value 2s+4R for the power-map family",
    "Mobius h with omega=2R/(1-z): origin value and threshold root",
    "logarithmic dilatation example stays within t",
    "threshold function reference values",
    "shear-Schwarzian origin value for the power-map family",
    "annulus-hypothesis soundness sweep",
    "shear-criterion soundness sweep (eta and balloon)",
    "Schwarz-Pick / distortion / coefficient inequality suites",
    "independent-oracle agreement",
    "lift height, path independence, isothermal parameters",
    "Nehari weight validation and rejection",
    "chord-arc reference geometry",
    "non-univalent shear collision certificate",
];

/// Run the full verification suite; never panics, failures are reported.
pub fn run_all() -> Vec<CheckResult> {
    (1..=13).map(run_check).collect()
}

pub fn run_check(id: usize) -> CheckResult {
    let name = NAMES[id - 1];
    let outcome = match id {
        1 => check_origin_family(),
        2 => check_mobius_family(),
        3 => check_log_dilatation(),
        4 => check_thresholds(),
        5 => check_shear_origin(),
        6 => check_annulus_sweep(),
        7 => check_shear_sweep(),
        8 => check_inequalities(),
        9 => check_oracles(),
        10 => check_lift(),
        11 => check_nehari(),
        12 => check_chordarc(),
        13 => check_collision(),
        _ => Err(crate::error::Error::Domain(format!("no check {id}"))),
    };
    match outcome {
        Ok((passed, detail)) => CheckResult {
            id,
            name,
            passed,
            detail,
        },
        Err(e) => CheckResult {
            id,
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

type Outcome = Result<(bool, String)>;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `((1+z)/(1-z))^alpha`; the `alpha = 0` limit (i.e. `s = 1`) degenerates
/// to a constant, so the logarithm is used instead — it has the same
/// Schwarzian `2/(1-z^2)^2`.
pub fn power_map(s: f64) -> Result<AnalyticExpr> {
    let alpha = (1.0 - s).sqrt();
    if alpha < 1e-12 {
        AnalyticExpr::parse("log((1+z)/(1-z))")
    } else {
        AnalyticExpr::parse(&format!("((1+z)/(1-z))^{alpha:.17}"))
    }
}

fn check_origin_family() -> Outcome {
    let mut detail = String::new();
    let mut passed = true;
    for &(s, r_cap) in &[(0.0_f64, 0.3_f64), (0.5, 0.4), (0.75, 0.25), (1.0, 0.1)] {
        let h = power_map(s)?;
        let q = AnalyticExpr::parse(&format!("{:.17}*z", r_cap.sqrt()))?;
        let m = HarmonicMapping::new(h, q);
        let phi0 = schwarzian::phi_quantity(&m, c64(0.0, 0.0))?.phi;
        let expect = 2.0 * s + 4.0 * r_cap;
        let err = (phi0 - expect).abs();
        if err > 1e-9 {
            passed = false;
        }
        detail.push_str(&format!("(s={s}, R={r_cap}): |err|={err:.2e}; "));
    }
    Ok((passed, detail))
}

fn mobius_family_phi0(r_cap: f64) -> Result<f64> {
    let h = AnalyticExpr::parse("z/(1+z)")?;
    let q = AnalyticExpr::parse(&format!("({:.17}/(1-z))^0.5", 2.0 * r_cap))?;
    let m = HarmonicMapping::new(h, q);
    Ok(schwarzian::phi_quantity(&m, c64(0.0, 0.0))?.phi)
}

fn check_mobius_family() -> Outcome {
    let mut detail = String::new();
    let mut passed = true;
    for &r_cap in &[0.2, 0.78, 1.5] {
        let phi0 = mobius_family_phi0(r_cap)?;
        let expect = r_cap * (10.0 * r_cap + 9.0) / (2.0 * r_cap + 1.0).powi(2);
        let err = (phi0 - expect).abs();
        if err > 1e-9 {
            passed = false;
        }
        detail.push_str(&format!("R={r_cap}: |err|={err:.2e}; "));
    }
    // Threshold root of Phi_f(0) = 2, solved on the computed values.
    let (mut lo, mut hi) = (0.1_f64, 2.0_f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mobius_family_phi0(mid)? < 2.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let expect = (17.0_f64.sqrt() - 1.0) / 4.0;
    let err = (root - expect).abs();
    if err > 1e-9 {
        passed = false;
    }
    detail.push_str(&format!("root err {err:.2e}"));
    Ok((passed, detail))
}

fn check_log_dilatation() -> Outcome {
    let grid = GridSpec::DEFAULT;
    let mut detail = String::new();
    let mut passed = true;
    for &t in &[0.5_f64, 1.0] {
        let a = ((1.0 + 8.0 * t).sqrt() - 1.0) / 8.0;
        let h = AnalyticExpr::parse("z")?;
        let q = AnalyticExpr::parse(&format!("{a:.17}*log(1/(1-z))"))?;
        let m = HarmonicMapping::new(h, q);
        let (teff, _) = criteria::effective_t(&m, &grid)?;
        if teff > t + 1e-6 {
            passed = false;
        }
        detail.push_str(&format!("t={t}: effective_t={teff:.6}; "));
    }
    Ok((passed, detail))
}

fn check_thresholds() -> Outcome {
    let mut detail = String::new();
    let mut passed = true;
    let mut record = |name: &str, got: f64, expect: f64, tol: f64| {
        let err = (got - expect).abs();
        if err > tol {
            passed = false;
        }
        detail.push_str(&format!("{name}: |err|={err:.2e}; "));
    };
    record("eta(0,1)", eta(0.0, 1.0)?, 1.0 / 11.0, 1e-15);
    record("c(0,1)", c_fn(0.0, 1.0)?, 3.0 / 28.0, 1e-15);
    record("c*(0,1)", c_star(0.0, 1.0)?, 0.1171, 2e-3);
    record("t_hat(0)", t_hat(0.0)?, 0.4431, 1e-3);
    record("t_hat(1)", t_hat(1.0)?, 1.0, 1e-12);
    // Continuity of rho across the formula change at R0.
    let (s, t) = (0.25, 0.8);
    let r_knee = r0(s, t)?;
    let jump = (rho(s, t, r_knee + 1e-9)? - rho(s, t, r_knee - 1e-9)?).abs();
    if jump > 1e-8 {
        passed = false;
    }
    detail.push_str(&format!("rho continuity jump {jump:.2e}"));
    Ok((passed, detail))
}

fn check_shear_origin() -> Outcome {
    let mut detail = String::new();
    let mut passed = true;
    for &(s, r_cap) in &[(0.0_f64, 0.3_f64), (0.5, 0.4), (0.75, 0.25), (1.0, 0.1)] {
        let phi = power_map(s)?;
        let q = AnalyticExpr::parse(&format!("{:.17}*z", r_cap.sqrt()))?;
        let sf0 = schwarzian::shear_schwarzian(&phi, &q, c64(0.0, 0.0))?;
        let err = (sf0.norm() - (2.0 * s + 2.0 * r_cap)).abs();
        // With the curvature term the full criterion quantity at the origin
        // is |Sf(0)| + 4R = 2s + 6R.
        let qj = q.eval_jet(c64(0.0, 0.0), 3)?;
        let full = sf0.norm() + schwarzian::curvature_term_jet(&qj);
        let err_full = (full - (2.0 * s + 6.0 * r_cap)).abs();
        if err > 1e-9 || err_full > 1e-9 {
            passed = false;
        }
        detail.push_str(&format!("(s={s}, R={r_cap}): |err|={err:.2e}; "));
    }
    Ok((passed, detail))
}

fn check_annulus_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let grid = GridSpec::new(48, 64, 0.995)?;
    let mut detail = String::new();
    let mut passed = true;
    for case in 0..20 {
        let s: f64 = rng.gen_range(0.0..0.9);
        let t: f64 = rng.gen_range(s..1.0);
        let knee = r0(s, t)?;
        let h = power_map(s)?;
        // Alternate between the disk case (R <= R0, omega = R z^2) and the
        // annulus case (omega = sqrt(rho R) e^{beta z}, |omega| in [rho, R]).
        let (q, r_cap): (AnalyticExpr, f64) = if case % 2 == 0 {
            let r_cap = rng.gen_range(0.0..knee.max(1e-6));
            (
                AnalyticExpr::parse(&format!("{:.17}*z", r_cap.sqrt()))?,
                r_cap,
            )
        } else {
            let r_cap = rng.gen_range(knee..(knee + 0.5 * (t - s)).max(knee * 1.5));
            let lo = rho(s, t, r_cap)?.max(1e-9);
            let beta = 0.5 * (r_cap / lo).ln();
            let mid = (lo * r_cap).sqrt();
            (
                AnalyticExpr::parse(&format!(
                    "{:.17}*exp({:.17}*z)",
                    mid.sqrt(),
                    0.5 * beta
                ))?,
                r_cap,
            )
        };
        let m = HarmonicMapping::new(h, q);
        let (teff, _) = criteria::effective_t(&m, &grid)?;
        if teff > t + 1e-6 {
            passed = false;
            detail.push_str(&format!(
                "FAIL case {case}: s={s:.3} t={t:.3} R={r_cap:.3} teff={teff:.4}; "
            ));
        }
    }
    if passed {
        detail.push_str("20 cases within t + 1e-6");
    }
    Ok((passed, detail))
}

fn check_shear_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let grid = GridSpec::new(48, 64, 0.995)?;
    let mut detail = String::new();
    let mut passed = true;
    // First condition: |omega| <= eta(s, t).
    for case in 0..20 {
        let s: f64 = rng.gen_range(0.0..0.9);
        let t: f64 = rng.gen_range(s..1.0);
        let e = eta(s, t)?;
        let phi = power_map(s)?;
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let root = (e * rng.gen_range(0.5..1.0_f64)).sqrt();
        let q = match case % 3 {
            0 => AnalyticExpr::parse(&format!(
                "({:.17}+{:.17}i)*z",
                root * (theta / 2.0).cos(),
                root * (theta / 2.0).sin()
            ))?,
            1 => AnalyticExpr::parse(&format!("{root:.17}*z^2"))?,
            _ => AnalyticExpr::parse(&format!("{root:.17}"))?,
        };
        let (teff, _) = criteria::effective_t_shear(&phi, &q, &grid)?;
        if teff > t + 1e-6 {
            passed = false;
            detail.push_str(&format!(
                "FAIL eta case {case}: s={s:.3} t={t:.3} teff={teff:.4}; "
            ));
        }
    }
    // Second condition: constant dilatation on the balloon boundary.
    for case in 0..10 {
        let s: f64 = rng.gen_range(0.0..0.9);
        let t: f64 = rng.gen_range(s..1.0);
        let c = c_fn(s, t)?;
        let shrink = rng.gen_range(0.5..1.0);
        let omega = -(1.0 - c * shrink) / (1.0 + c * shrink);
        debug_assert!(balloon(c64(omega, 0.0), c));
        let phi = power_map(s)?;
        // q = i sqrt(|omega|) so that q^2 = omega < 0.
        let q = AnalyticExpr::parse(&format!("{:.17}i", (-omega).sqrt()))?;
        let (teff, _) = criteria::effective_t_shear(&phi, &q, &grid)?;
        if teff > t + 1e-6 {
            passed = false;
            detail.push_str(&format!(
                "FAIL balloon case {case}: s={s:.3} t={t:.3} teff={teff:.4}; "
            ));
        }
    }
    if passed {
        detail.push_str("30 cases within t + 1e-6");
    }
    Ok((passed, detail))
}

fn check_inequalities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut detail = String::new();
    let mut passed = true;
    let sample = |rng: &mut ChaCha8Rng| -> Complex64 {
        Complex64::from_polar(
            rng.gen_range(0.0..0.95_f64),
            rng.gen_range(0.0..std::f64::consts::TAU),
        )
    };

    // Schwarz-Pick: |q| <= r implies |q'| <= (r^2 - |q|^2) / (r (1-|z|^2)).
    let mut sp_viol = 0usize;
    for &(q_text, r) in &[("0.7*z", 0.7), ("0.5*z^2", 0.5), ("0.9*z*(0.5+0.5*z)", 0.9)] {
        let q = AnalyticExpr::parse(q_text)?;
        for _ in 0..100 {
            let z = sample(&mut rng);
            let j = q.eval_jet(z, 1)?;
            let bound = (r * r - j.value().norm_sqr()) / (r * (1.0 - z.norm_sqr()));
            if j.coeffs()[1].norm() > bound + 1e-12 {
                sp_viol += 1;
            }
        }
    }
    if sp_viol > 0 {
        passed = false;
    }
    detail.push_str(&format!("schwarz-pick violations: {sp_viol}; "));

    // Distortion: for ||Sf|| = 2t,
    // |f''/f' - 2 conj(z)/(1-|z|^2)| <= 2 sqrt(1+t)/(1-|z|^2),
    // with equality at the origin for the extremal power map.
    let mut po_viol = 0usize;
    for &t in &[0.25_f64, 0.5, 1.0] {
        let alpha = (1.0 + t).sqrt();
        let f = AnalyticExpr::parse(&format!("((1+z)/(1-z))^{alpha:.17}"))?;
        for _ in 0..100 {
            let z = sample(&mut rng);
            let pre = schwarzian::pre_schwarzian(&f, z)?;
            let lhs = (pre - 2.0 * z.conj() / (1.0 - z.norm_sqr())).norm();
            let bound = 2.0 * alpha / (1.0 - z.norm_sqr());
            if lhs > bound + 1e-9 {
                po_viol += 1;
            }
        }
        let origin = schwarzian::pre_schwarzian(&f, c64(0.0, 0.0))?.norm();
        if (origin - 2.0 * alpha).abs() > 1e-9 {
            passed = false;
        }
    }
    if po_viol > 0 {
        passed = false;
    }
    detail.push_str(&format!("distortion violations: {po_viol}; "));

    // Coefficient lemma: |omega| < R implies
    // |omega'' - 2 conj(z) omega'/(1-|z|^2)| <= 2 (R^2-|omega|^2)/(R (1-|z|^2)^2),
    // with equality at the origin for omega = R z^2.
    let mut wi_viol = 0usize;
    for &(om_text, r_cap) in &[("0.4*z^2", 0.4), ("0.3*z", 0.3), ("0.6*z^3", 0.6)] {
        let om = AnalyticExpr::parse(om_text)?;
        for _ in 0..100 {
            let z = sample(&mut rng);
            let j = om.eval_jet(z, 2)?;
            let d1 = j.coeffs()[1];
            let d2 = 2.0 * j.coeffs()[2];
            let w = 1.0 - z.norm_sqr();
            let lhs = (d2 - 2.0 * z.conj() * d1 / w).norm();
            let bound = 2.0 * (r_cap * r_cap - j.value().norm_sqr()) / (r_cap * w * w);
            if lhs > bound + 1e-9 {
                wi_viol += 1;
            }
        }
    }
    let extremal = AnalyticExpr::parse("0.4*z^2")?;
    let j0 = extremal.eval_jet(c64(0.0, 0.0), 2)?;
    let lhs0 = 2.0 * j0.coeffs()[2].norm();
    if (lhs0 - 2.0 * 0.4).abs() > 1e-12 {
        passed = false;
    }
    if wi_viol > 0 {
        passed = false;
    }
    detail.push_str(&format!("coefficient violations: {wi_viol}"));
    Ok((passed, detail))
}

fn check_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let mut detail = String::new();
    let mut passed = true;
    let catalog = [
        "z",
        "z/(1-z)",
        "((1+z)/(1-z))^0.5",
        "log(1/(1-z))",
        "exp(0.5*z)",
        "z - 0.25*z^2",
        "z/(1+0.5*z^2)",
        "mobius(2,1,1,3)",
        "sqrt(1+z)",
        "1/(1-z)^1.5",
    ];

    // Schwarzian vs a complex-stencil finite difference oracle.
    let mut max_fd = 0.0_f64;
    for k in 0..50 {
        let f = AnalyticExpr::parse(catalog[k % catalog.len()])?;
        let z = Complex64::from_polar(
            rng.gen_range(0.0..0.6_f64),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let exact = schwarzian::schwarzian_analytic(&f, z)?;
        let approx = schwarzian::fd_schwarzian(&f, z, 1e-3)?;
        max_fd = max_fd.max((exact - approx).norm());
    }
    if max_fd > 1e-5 {
        passed = false;
    }
    detail.push_str(&format!("max |S_jet - S_fd| = {max_fd:.2e}; "));

    // Gauss curvature vs finite-difference Laplacian of the log conformal
    // factor: K = -exp(-2 sigma) * Laplacian(sigma).
    let mut max_k = 0.0_f64;
    for k in 0..20 {
        let h = AnalyticExpr::parse(catalog[k % 5])?;
        let q = AnalyticExpr::parse(["0.5*z", "0.3", "0.4*z^2", "0.2*(1+z)"][k % 4])?;
        let m = HarmonicMapping::new(h, q);
        let z = Complex64::from_polar(
            rng.gen_range(0.1..0.5_f64),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let exact = schwarzian::gauss_curvature(&m, z)?;
        let sigma = |z: Complex64| -> Result<f64> {
            Ok(schwarzian::conformal_factor(&m, z)?.ln())
        };
        let step = 1e-4;
        let lap = (sigma(z + c64(step, 0.0))?
            + sigma(z - c64(step, 0.0))?
            + sigma(z + c64(0.0, step))?
            + sigma(z - c64(0.0, step))?
            - 4.0 * sigma(z)?)
            / (step * step);
        let approx = -(-2.0 * sigma(z)?).exp() * lap;
        max_k = max_k.max((exact - approx).abs());
    }
    if max_k > 1e-4 {
        passed = false;
    }
    detail.push_str(&format!("max |K_jet - K_fd| = {max_k:.2e}; "));

    // Shear Schwarzian vs the harmonic Schwarzian of the constructed shear.
    let mut max_sh = 0.0_f64;
    for k in 0..20 {
        let phi = AnalyticExpr::parse(["z", "z/(1-z)", "z - 0.25*z^2"][k % 3])?;
        let q = AnalyticExpr::parse(["0.4*z", "0.3", "0.35*z^2", "0.25*(1+0.5*z)"][k % 4])?;
        let omega = AnalyticExpr::parse(&format!("({q})^2"))?;
        let res = shear::shear(&shear::ShearSpec::new(phi.clone(), omega))?;
        let z = Complex64::from_polar(
            rng.gen_range(0.0..0.55_f64),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let direct = schwarzian::shear_schwarzian(&phi, &q, z)?;
        let hj = res.h_series.eval_jet(z, 3);
        let qj = q.eval_jet(z, 3)?;
        let via_shear = schwarzian::harmonic_schwarzian_jets(&hj, &qj)?;
        max_sh = max_sh.max((direct - via_shear).norm());
    }
    if max_sh > 1e-9 {
        passed = false;
    }
    detail.push_str(&format!("max shear-path disagreement = {max_sh:.2e}"));
    Ok((passed, detail))
}

fn check_lift() -> Outcome {
    let quad = QuadratureSpec::default();
    let mut detail = String::new();
    let mut passed = true;

    // Mesh heights for h = z, q = z equal Im(z^2).
    let m = HarmonicMapping::new(AnalyticExpr::parse("z")?, AnalyticExpr::parse("z")?);
    let grid = GridSpec::new(12, 24, 0.9)?;
    let mesh = build_mesh(&m, &grid, &quad)?;
    let mut max_w = 0.0_f64;
    for (i, v) in mesh.vertices.iter().enumerate() {
        let z = if i == 0 {
            c64(0.0, 0.0)
        } else {
            let j = (i - 1) / grid.ntheta + 1;
            let k = (i - 1) % grid.ntheta;
            Complex64::from_polar(grid.r_max * j as f64 / grid.nr as f64, grid.angle(k))
        };
        max_w = max_w.max((v.w - (z * z).im).abs());
    }
    if max_w > 1e-8 {
        passed = false;
    }
    detail.push_str(&format!("max |W - Im z^2| = {max_w:.2e}; "));

    // Path independence on random catalog points.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut max_pi = 0.0_f64;
    for k in 0..20 {
        let h = AnalyticExpr::parse(["z", "z/(1-z)", "z - 0.25*z^2"][k % 3])?;
        let q = AnalyticExpr::parse(["0.5*z", "0.3", "0.4*z^2"][k % 3])?;
        let mm = HarmonicMapping::new(h, q);
        let z = Complex64::from_polar(
            rng.gen_range(0.1..0.8_f64),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        max_pi = max_pi.max(crate::lift::path_independence_check(&mm, z, &quad)?);
    }
    if max_pi > 1e-7 {
        passed = false;
    }
    detail.push_str(&format!("max path discrepancy = {max_pi:.2e}; "));

    // Isothermal parameters: finite-difference tangent vectors of the lift
    // are orthogonal with equal norms.
    let mm = HarmonicMapping::new(AnalyticExpr::parse("z/(1-z)")?, AnalyticExpr::parse("0.5*z")?);
    let mut max_iso = 0.0_f64;
    for &z in &[c64(0.3, 0.2), c64(-0.2, 0.4), c64(0.1, -0.5)] {
        let step = 1e-4;
        let tangent = |dz: Complex64| -> Result<[f64; 3]> {
            let p = lift_point(&mm, z + dz, &quad)?;
            let q = lift_point(&mm, z - dz, &quad)?;
            Ok([
                (p.u - q.u) / (2.0 * step),
                (p.v - q.v) / (2.0 * step),
                (p.w - q.w) / (2.0 * step),
            ])
        };
        let tx = tangent(c64(step, 0.0))?;
        let ty = tangent(c64(0.0, step))?;
        let dot: f64 = tx.iter().zip(&ty).map(|(a, b)| a * b).sum();
        let nx = tx.iter().map(|a| a * a).sum::<f64>().sqrt();
        let ny = ty.iter().map(|a| a * a).sum::<f64>().sqrt();
        max_iso = max_iso.max((dot / (nx * ny)).abs());
        max_iso = max_iso.max((nx - ny).abs() / nx);
    }
    if max_iso > 1e-3 {
        passed = false;
    }
    detail.push_str(&format!("max isothermal defect = {max_iso:.2e}"));
    Ok((passed, detail))
}

fn check_nehari() -> Outcome {
    let mut detail = String::new();
    let mut passed = true;
    for (p, name) in [
        (NehariFunction::Quad, "quad"),
        (NehariFunction::Hyper, "hyper"),
        (NehariFunction::ConstPiSq4, "const"),
    ] {
        let rep = validate_nehari(&p, 512)?;
        if !rep.pass() {
            passed = false;
            detail.push_str(&format!("{name} rejected; "));
        }
    }
    let rejected = validate_nehari(&NehariFunction::Custom(AnalyticExpr::parse("10")?), 512)?;
    match rejected.disconjugacy {
        Disconjugacy::Fail { zero } => {
            let err = (zero.abs() - std::f64::consts::PI / (2.0 * 10.0_f64.sqrt())).abs();
            if err > 1e-3 {
                passed = false;
            }
            detail.push_str(&format!("p=10 zero at {:.4} (err {err:.1e})", zero.abs()));
        }
        ref other => {
            passed = false;
            detail.push_str(&format!("p=10 not rejected: {other:?}"));
        }
    }
    Ok((passed, detail))
}

fn check_chordarc() -> Outcome {
    let mut detail = String::new();
    let mut passed = true;
    let square = PolygonDomain::new(vec![
        c64(0.0, 0.0),
        c64(1.0, 0.0),
        c64(1.0, 1.0),
        c64(0.0, 1.0),
    ])?;
    let m = chord_arc_constant(&square, 200, 17)?;
    if m != 1.0 {
        passed = false;
    }
    detail.push_str(&format!("convex M = {m}; "));

    let l_shape = PolygonDomain::new(vec![
        c64(0.0, 0.0),
        c64(2.0, 0.0),
        c64(2.0, 1.0),
        c64(1.0, 1.0),
        c64(1.0, 2.0),
        c64(0.0, 2.0),
    ])?;
    let d = l_shape.internal_distance(c64(1.5, 0.5), c64(0.5, 1.5))?;
    let err = (d - 2.0 * 0.5_f64.sqrt()).abs();
    if err > 1e-9 {
        passed = false;
    }
    detail.push_str(&format!("L-shape distance err {err:.2e}; "));

    let b = chord_arc_shear_bound(1.0)?;
    if b != 1.0 / 3.0 {
        passed = false;
    }
    detail.push_str(&format!("bound(1) = {b}"));
    Ok((passed, detail))
}

fn check_collision() -> Outcome {
    let (phi, psi, w1, w2, c) = folding_example();
    let cert = converse_construction(&phi, &psi, w1, w2, c)?;
    let passed = cert.gap <= 1e-7 && cert.sup_omega < cert.omega_bound;
    Ok((
        passed,
        format!(
            "gap = {:.2e}, sup|omega| = {:.4} < {:.4}",
            cert.gap, cert.sup_omega, cert.omega_bound
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_cover_all_checks() {
        assert_eq!(NAMES.len(), 13);
    }

    #[test]
    fn power_map_schwarzian_norm() {
        for &s in &[0.0, 0.4, 1.0] {
            let h = power_map(s).unwrap();
            let sh = schwarzian::schwarzian_analytic(&h, c64(0.0, 0.0)).unwrap();
            assert!((sh.norm() - 2.0 * s).abs() < 1e-12, "s = {s}");
        }
    }
}
