//! Shear constructions: building a harmonic mapping from a locally univalent
//! analytic function and a prescribed dilatation, and the converse
//! construction producing a non-univalent shear from a non-injective
//! near-identity map of the target domain.

use crate::error::{Error, Result};
use crate::expr::{AnalyticExpr, PowerSeries};
use crate::lift::quad::{gauss_legendre_segment, QuadratureSpec};
use num_complex::Complex64;
use serde::Serialize;

/// Default series truncation order for shear construction.
pub const DEFAULT_SHEAR_ORDER: usize = 64;

/// Input to [`shear`]: `h - lambda^2 g = phi` with dilatation `omega`.
#[derive(Debug, Clone)]
pub struct ShearSpec {
    pub phi: AnalyticExpr,
    pub omega: AnalyticExpr,
    /// Shear direction, unit modulus.
    pub lambda: Complex64,
    /// Series truncation order.
    pub order: usize,
}

impl ShearSpec {
    pub fn new(phi: AnalyticExpr, omega: AnalyticExpr) -> Self {
        ShearSpec {
            phi,
            omega,
            lambda: Complex64::new(1.0, 0.0),
            order: DEFAULT_SHEAR_ORDER,
        }
    }

    pub fn with_lambda(mut self, lambda: Complex64) -> Result<Self> {
        if (lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "shear direction must have unit modulus, got |lambda| = {}",
                lambda.norm()
            )));
        }
        self.lambda = lambda;
        Ok(self)
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }
}

/// A constructed shear as truncated power series at the origin.
#[derive(Debug, Clone)]
pub struct ShearResult {
    pub h_series: PowerSeries,
    pub g_series: PowerSeries,
    pub omega: AnalyticExpr,
    pub lambda: Complex64,
    /// Max of `|h - lambda^2 g - phi|` on the check circle grid.
    pub residual: f64,
    /// Estimated series tail at `|z| = 0.9`.
    pub tail_estimate: f64,
    /// False when `omega` has an odd-order zero at the origin, so the
    /// dilatation admits no analytic square root and the lift is unavailable.
    pub liftable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShearResultJson {
    pub h: Vec<[f64; 2]>,
    pub g: Vec<[f64; 2]>,
    pub order: usize,
    pub residual: f64,
    pub liftable: bool,
}

impl ShearResult {
    pub fn to_json(&self) -> ShearResultJson {
        ShearResultJson {
            h: self.h_series.coeffs().iter().map(|c| [c.re, c.im]).collect(),
            g: self.g_series.coeffs().iter().map(|c| [c.re, c.im]).collect(),
            order: self.h_series.order(),
            residual: self.residual,
            liftable: self.liftable,
        }
    }

    /// `f(z) = h(z) + conj(g(z))` by series evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.h_series.eval(z) + self.g_series.eval(z).conj()
    }
}

/// Construct the shear of `phi` with dilatation `omega` in direction `lambda`:
/// `h' = phi' / (1 - lambda^2 omega)`, `g' = omega h'`, `h(0) = phi(0)`,
/// `g(0) = 0`.
pub fn shear(spec: &ShearSpec) -> Result<ShearResult> {
    let order = spec.order;
    let lambda2 = spec.lambda * spec.lambda;
    let one = Complex64::new(1.0, 0.0);

    // Guard against 1 - lambda^2 omega vanishing on a sample circle.
    for k in 0..64 {
        let z = Complex64::from_polar(0.9, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
        let om = spec.omega.eval(z)?;
        if (one - lambda2 * om).norm() < 1e-9 {
            return Err(Error::DegenerateShear { z });
        }
    }

    let origin = Complex64::new(0.0, 0.0);
    let phi_jet = spec.phi.eval_jet(origin, order + 1)?;
    let omega_jet = spec.omega.eval_jet(origin, order)?;
    let phi_prime = phi_jet.differentiate();
    let denom = jet_one(order).sub(&omega_jet.scale(lambda2));
    if denom.coeffs()[0].norm() < 1e-12 {
        return Err(Error::DegenerateShear { z: origin });
    }
    let h_prime = phi_prime.div(&denom)?;
    let g_prime = omega_jet.mul(&h_prime);

    let h_prime_series = PowerSeries::new(h_prime.coeffs().to_vec());
    let g_prime_series = PowerSeries::new(g_prime.coeffs().to_vec());
    let h_series = h_prime_series.antiderivative(spec.phi.eval(origin)?);
    let g_series = g_prime_series.antiderivative(Complex64::new(0.0, 0.0));

    // Residual of the defining equation on a check grid at |z| = 0.9.
    let mut residual = 0.0_f64;
    for k in 0..64 {
        let z = Complex64::from_polar(0.9, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
        let lhs = h_series.eval(z) - lambda2 * g_series.eval(z);
        let rhs = spec.phi.eval(z)?;
        residual = residual.max((lhs - rhs).norm());
    }
    let tail_estimate = h_series.tail_bound(0.9).max(g_series.tail_bound(0.9));

    // Odd-order zero of omega at the origin => no analytic square root.
    let liftable = {
        let coeffs = omega_jet.coeffs();
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let lead = coeffs.iter().position(|c| c.norm() > 1e-12 * scale.max(1.0));
        match lead {
            Some(k) => k % 2 == 0,
            None => true, // omega identically zero: q = 0 works
        }
    };

    Ok(ShearResult {
        h_series,
        g_series,
        omega: spec.omega.clone(),
        lambda: spec.lambda,
        residual,
        tail_estimate,
        liftable,
    })
}

fn jet_one(order: usize) -> crate::jets::Jet {
    crate::jets::Jet::constant(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), order)
}

/// Shear-safety bound `1/(2M+1)` from the chord-arc constant; the
/// directional variant uses `M(lambda)` in place of `M`.
pub fn chord_arc_shear_bound(m: f64) -> Result<f64> {
    if m < 1.0 {
        return Err(Error::Domain(format!(
            "chord-arc constant must be >= 1, got {m}"
        )));
    }
    Ok(1.0 / (2.0 * m + 1.0))
}

/// Evidence that two points collide under the planar mapping
/// `F(w) = w + 2 Re g(phi^{-1}(w))`.
#[derive(Debug, Clone, Serialize)]
pub struct CollisionCertificate {
    pub w1: [f64; 2],
    pub w2: [f64; 2],
    pub f_w1: [f64; 2],
    pub f_w2: [f64; 2],
    /// `|F(w1) - F(w2)|`; non-univalence is certified when this is tiny.
    pub gap: f64,
    /// Sampled supremum of the dilatation modulus.
    pub sup_omega: f64,
    /// The bound `c/(2-c)` it must stay under.
    pub omega_bound: f64,
}

/// Build a certified non-univalent shear: given `phi` conformal on
/// the disk, a non-injective `Psi` on `Omega = phi(D)` with `|Psi' - 1| < c`,
/// and a collision pair `w1 != w2` with `Psi(w1) = Psi(w2)` on a horizontal
/// line, define `g'(z) = 0.5 phi'(z) psi'(phi(z))` (`psi = Psi - id`), so the
/// shear `f = h + conj(g)` with `h - g = phi` folds `w1` onto `w2`.
///
/// Returns the certificate `|F(w1) - F(w2)|` evaluated through `phi^{-1}`
/// (Newton) and quadrature of `g'`.
pub fn converse_construction(
    phi: &AnalyticExpr,
    psi_big: &AnalyticExpr,
    w1: Complex64,
    w2: Complex64,
    c: f64,
) -> Result<CollisionCertificate> {
    if !(0.0..2.0).contains(&c) || c == 0.0 {
        return Err(Error::Domain(format!("c={c} outside (0,2)")));
    }
    if (w1 - w2).norm() < 1e-9 {
        return Err(Error::PreconditionViolation(
            "collision points must be distinct".to_string(),
        ));
    }
    if (w1.im - w2.im).abs() > 1e-9 {
        return Err(Error::PreconditionViolation(format!(
            "collision pair must lie on a horizontal line: Im w1 = {}, Im w2 = {}",
            w1.im, w2.im
        )));
    }
    let psi1 = psi_big.eval_at(w1)?;
    let psi2 = psi_big.eval_at(w2)?;
    if (psi1 - psi2).norm() > 1e-9 {
        return Err(Error::PreconditionViolation(format!(
            "Psi(w1) != Psi(w2): |difference| = {:e}",
            (psi1 - psi2).norm()
        )));
    }

    // |Psi' - 1| < c on a sample of Omega, and the resulting dilatation bound.
    let mut sup_psi_prime = 0.0_f64;
    for jr in 1..=24 {
        let r = 0.999 * jr as f64 / 24.0;
        for k in 0..96 {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / 96.0);
            let w = phi.eval(z)?;
            let dpsi = psi_big.eval_jet_at(w, 1)?.coeffs()[1] - Complex64::new(1.0, 0.0);
            sup_psi_prime = sup_psi_prime.max(dpsi.norm());
        }
    }
    if sup_psi_prime >= c {
        return Err(Error::PreconditionViolation(format!(
            "|Psi' - 1| reaches {sup_psi_prime} >= c = {c} on the sampled domain"
        )));
    }
    if sup_psi_prime < 1e-15 {
        return Err(Error::PreconditionViolation(
            "psi is constant: the shear is phi itself and Psi is injective on the pair"
                .to_string(),
        ));
    }
    let omega_bound = c / (2.0 - c);
    let sup_omega = sup_psi_prime / (2.0 - sup_psi_prime);

    // Invert phi at the collision points.
    let z1 = invert_phi(phi, w1)?;
    let z2 = invert_phi(phi, w2)?;

    // g(z) = int_0^z 0.5 phi'(zeta) psi'(phi(zeta)) d zeta along the segment.
    let quad = QuadratureSpec::default();
    let g_prime = |z: Complex64| -> Result<Complex64> {
        let pj = phi.eval_jet(z, 1)?;
        let w = pj.value();
        let psi_prime = psi_big.eval_jet_at(w, 1)?.coeffs()[1] - Complex64::new(1.0, 0.0);
        Ok(0.5 * pj.coeffs()[1] * psi_prime)
    };
    let origin = Complex64::new(0.0, 0.0);
    let g1 = gauss_legendre_segment(&g_prime, origin, z1, &quad)?;
    let g2 = gauss_legendre_segment(&g_prime, origin, z2, &quad)?;

    let f1 = w1 + 2.0 * g1.re;
    let f2 = w2 + 2.0 * g2.re;
    Ok(CollisionCertificate {
        w1: [w1.re, w1.im],
        w2: [w2.re, w2.im],
        f_w1: [f1.re, f1.im],
        f_w2: [f2.re, f2.im],
        gap: (f1 - f2).norm(),
        sup_omega,
        omega_bound,
    })
}

/// A concrete non-univalent shear with arbitrarily small dilatation bound:
/// `phi(z) = i(z + z^2/2)` maps the disk onto a rotated cardioid with an
/// inward cusp at `-i/2`; placing the logarithmic pole of
/// `Psi(w) = w - i c k log(w - p)` inside the exterior spike below the cusp
/// folds the symmetric pair `w = -y0 + i Im p` and `w = y0 + i Im p`
/// together while `|Psi' - 1|` stays below `c`.
///
/// Returns `(phi, Psi, w1, w2, c)` ready for [`converse_construction`].
pub fn folding_example() -> (AnalyticExpr, AnalyticExpr, Complex64, Complex64, f64) {
    let d: f64 = 0.02; // pole depth below the cusp
    let c: f64 = 0.9;
    // The spike half-width at depth d is ~ sqrt(2) d^{3/2}; the collision
    // pair must sit outside the spike but close enough that k stays small.
    let y0 = 1.7 * d.powf(1.5);
    let k = 2.0 * y0 / (c * std::f64::consts::PI);
    let phi = AnalyticExpr::parse("1i*(z + 0.5*z^2)").expect("fixture phi parses");
    let psi = AnalyticExpr::parse(&format!(
        "z - {:.17}i*log(z + {:.17}i)",
        c * k,
        0.5 + d
    ))
    .expect("fixture Psi parses");
    let w1 = Complex64::new(-y0, -(0.5 + d));
    let w2 = Complex64::new(y0, -(0.5 + d));
    (phi, psi, w1, w2, c)
}

/// Newton iteration for `phi(z) = w`, seeded from a coarse grid search.
fn invert_phi(phi: &AnalyticExpr, w: Complex64) -> Result<Complex64> {
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for jr in 0..40 {
        let r = 0.999 * (jr as f64 + 0.5) / 40.0;
        for k in 0..128 {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / 128.0);
            let d = (phi.eval(z)? - w).norm();
            if d < best.0 {
                best = (d, z);
            }
        }
    }
    let mut z = best.1;
    for _ in 0..50 {
        let j = phi.eval_jet(z, 1)?;
        let fp = j.coeffs()[1];
        if fp.norm() < 1e-14 {
            return Err(Error::CriticalPoint { z });
        }
        let step = (j.value() - w) / fp;
        let mut next = z - step;
        // Stay inside the disk; damping near the boundary.
        let mut damp = 1.0;
        while next.norm() >= 0.9999 && damp > 1e-6 {
            damp *= 0.5;
            next = z - damp * step;
        }
        z = next;
        if step.norm() * damp < 1e-13 {
            break;
        }
    }
    let resid = (phi.eval(z)? - w).norm();
    if resid > 1e-9 {
        return Err(Error::Evaluation(format!(
            "Newton inversion of phi at {w} stalled with residual {resid:e}"
        )));
    }
    Ok(z)
}
