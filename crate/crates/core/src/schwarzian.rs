//! Analytic and harmonic Schwarzian derivatives, conformal factor, Gauss
//! curvature and the criterion quantity `Phi`.
//!
//! Every point evaluation goes through one order-3 jet of `h` and one of `q`;
//! all derived quantities are algebraic in those six derivatives.

use crate::error::{Error, Result};
use crate::expr::AnalyticExpr;
use crate::jets::Jet;
use num_complex::Complex64;
use serde::Serialize;

/// Relative tolerance below which a first derivative counts as a critical point.
const CRITICAL_TOL: f64 = 1e-12;

/// Harmonic mapping `f = h + conj(g)` stored through `h` and the square root
/// `q` of its dilatation, so `g' = q^2 h'` and `g(0) = 0`.
#[derive(Debug, Clone)]
pub struct HarmonicMapping {
    pub h: AnalyticExpr,
    pub q: AnalyticExpr,
}

impl HarmonicMapping {
    pub fn new(h: AnalyticExpr, q: AnalyticExpr) -> Self {
        HarmonicMapping { h, q }
    }

    /// Purely analytic mapping (`q = 0`).
    pub fn analytic(h: AnalyticExpr) -> Self {
        HarmonicMapping {
            h,
            q: AnalyticExpr::constant(Complex64::new(0.0, 0.0)),
        }
    }

    /// Order-3 jets of `h` and `q` at `z`.
    pub fn jets(&self, z: Complex64) -> Result<(Jet, Jet)> {
        let hj = self.h.eval_jet(z, 3)?;
        let qj = self.q.eval_jet(z, 3)?;
        Ok((hj, qj))
    }
}

/// All pointwise quantities entering the univalence criterion.
#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    /// Sample point, as `[re, im]`.
    pub z: [f64; 2],
    /// Harmonic Schwarzian `Sf(z)`, as `[re, im]`.
    pub sf: [f64; 2],
    /// `e^{2 sigma} |K| = 4|q'|^2 / (1+|q|^2)^2`.
    pub curvature_term: f64,
    /// `|Sf| + curvature_term`.
    pub phi: f64,
    /// `(1-|z|^2)^2 phi`.
    pub weighted_phi: f64,
    /// `e^sigma = |h'| (1 + |q|^2)`.
    pub conformal_factor: f64,
    /// `J_f = |h'|^2 (1 - |q|^4)`.
    pub jacobian: f64,
}

fn first_derivs(jet: &Jet) -> (Complex64, Complex64, Complex64) {
    let c = jet.coeffs();
    (c[1], 2.0 * c[2], 6.0 * c[3])
}

fn check_critical(fp: Complex64, z: Complex64) -> Result<()> {
    if fp.norm() < CRITICAL_TOL {
        return Err(Error::CriticalPoint { z });
    }
    Ok(())
}

/// `f''/f'` from an order >= 2 jet.
pub fn pre_schwarzian_jet(fj: &Jet) -> Result<Complex64> {
    let c = fj.coeffs();
    let (fp, fpp) = (c[1], 2.0 * c[2]);
    check_critical(fp, fj.center())?;
    Ok(fpp / fp)
}

pub fn pre_schwarzian(f: &AnalyticExpr, z: Complex64) -> Result<Complex64> {
    pre_schwarzian_jet(&f.eval_jet(z, 2)?)
}

/// Schwarzian `Sf = f'''/f' - (3/2)(f''/f')^2` from an order-3 jet.
pub fn schwarzian_jet(fj: &Jet) -> Result<Complex64> {
    let (fp, fpp, fppp) = first_derivs(fj);
    check_critical(fp, fj.center())?;
    let r = fpp / fp;
    Ok(fppp / fp - 1.5 * r * r)
}

pub fn schwarzian_analytic(f: &AnalyticExpr, z: Complex64) -> Result<Complex64> {
    schwarzian_jet(&f.eval_jet(z, 3)?)
}

/// Schwarzian estimated from central finite differences of scalar values.
/// Independent of the jet recurrences; intended for cross-validation.
pub fn fd_schwarzian(f: &AnalyticExpr, z: Complex64, step: f64) -> Result<Complex64> {
    let h = Complex64::new(step, 0.0);
    let ih = Complex64::new(0.0, step);
    for dz in [h, -h, ih, -ih] {
        if (z + dz).norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "finite-difference stencil at {z} exits the unit disk"
            )));
        }
    }
    let f0 = f.eval(z)?;
    let fpr = f.eval(z + h)?;
    let fmr = f.eval(z - h)?;
    let fpi = f.eval(z + ih)?;
    let fmi = f.eval(z - ih)?;
    // Combining the real and imaginary offsets cancels the leading even and
    // odd truncation terms, so each derivative is O(step^4) accurate.
    let i = Complex64::new(0.0, 1.0);
    let a_re = fpr - fmr;
    let a_im = fpi - fmi;
    let s_re = fpr + fmr - 2.0 * f0;
    let s_im = fpi + fmi - 2.0 * f0;
    let d1 = (a_re - i * a_im) / (4.0 * h);
    let d2 = (s_re - s_im) / (2.0 * h * h);
    let d3 = 1.5 * (a_re + i * a_im) / (h * h * h);
    check_critical(d1, z)?;
    let r = d2 / d1;
    Ok(d3 / d1 - 1.5 * r * r)
}

/// Harmonic Schwarzian from order-3 jets of `h` and `q`:
/// `Sf = Sh + 2 conj(q)/(1+|q|^2) (q'' - q' h''/h') - 4 (q' conj(q)/(1+|q|^2))^2`.
pub fn harmonic_schwarzian_jets(hj: &Jet, qj: &Jet) -> Result<Complex64> {
    let sh = schwarzian_jet(hj)?;
    let (hp, hpp, _) = first_derivs(hj);
    let (qp, qpp, _) = first_derivs(qj);
    let q = qj.value();
    let denom = 1.0 + q.norm_sqr();
    let term2 = 2.0 * q.conj() / denom * (qpp - qp * hpp / hp);
    let t3 = qp * q.conj() / denom;
    Ok(sh + term2 - 4.0 * t3 * t3)
}

pub fn harmonic_schwarzian(m: &HarmonicMapping, z: Complex64) -> Result<Complex64> {
    let (hj, qj) = m.jets(z)?;
    harmonic_schwarzian_jets(&hj, &qj)
}

/// `e^{2 sigma}|K| = 4|q'|^2 / (1+|q|^2)^2`.
pub fn curvature_term_jet(qj: &Jet) -> f64 {
    let qp = qj.coeffs()[1];
    let denom = 1.0 + qj.value().norm_sqr();
    4.0 * qp.norm_sqr() / (denom * denom)
}

pub fn curvature_term(m: &HarmonicMapping, z: Complex64) -> Result<f64> {
    Ok(curvature_term_jet(&m.q.eval_jet(z, 1)?))
}

/// Gauss curvature `K = -4|q'|^2 / (|h'|^2 (1+|q|^2)^4)`.
pub fn gauss_curvature_jets(hj: &Jet, qj: &Jet) -> Result<f64> {
    let hp = hj.coeffs()[1];
    check_critical(hp, hj.center())?;
    let qp = qj.coeffs()[1];
    let denom = 1.0 + qj.value().norm_sqr();
    Ok(-4.0 * qp.norm_sqr() / (hp.norm_sqr() * denom.powi(4)))
}

pub fn gauss_curvature(m: &HarmonicMapping, z: Complex64) -> Result<f64> {
    let (hj, qj) = m.jets(z)?;
    gauss_curvature_jets(&hj, &qj)
}

/// Conformal factor `e^sigma = |h'| + |g'| = |h'| (1 + |q|^2)`.
pub fn conformal_factor_jets(hj: &Jet, qj: &Jet) -> f64 {
    hj.coeffs()[1].norm() * (1.0 + qj.value().norm_sqr())
}

pub fn conformal_factor(m: &HarmonicMapping, z: Complex64) -> Result<f64> {
    let hj = m.h.eval_jet(z, 1)?;
    let qj = m.q.eval_jet(z, 1)?;
    Ok(conformal_factor_jets(&hj, &qj))
}

pub fn phi_quantity_jets(z: Complex64, hj: &Jet, qj: &Jet) -> Result<PointReport> {
    let sf = harmonic_schwarzian_jets(hj, qj)?;
    let curv = curvature_term_jet(qj);
    let phi = sf.norm() + curv;
    let w = 1.0 - z.norm_sqr();
    let hp = hj.coeffs()[1];
    let q4 = qj.value().norm_sqr().powi(2);
    Ok(PointReport {
        z: [z.re, z.im],
        sf: [sf.re, sf.im],
        curvature_term: curv,
        phi,
        weighted_phi: w * w * phi,
        conformal_factor: conformal_factor_jets(hj, qj),
        jacobian: hp.norm_sqr() * (1.0 - q4),
    })
}

pub fn phi_quantity(m: &HarmonicMapping, z: Complex64) -> Result<PointReport> {
    let (hj, qj) = m.jets(z)?;
    phi_quantity_jets(z, &hj, &qj)
}

/// Schwarzian of the shear `f` with `h - g = phi` and dilatation `omega = q^2`,
/// from order-3 jets of `phi` and `q`:
///
/// `Sf = Sphi + 2 (q/(1-q^2) + conj(q)/(1+|q|^2)) (q'' - q' phi''/phi')
///      + 2 q'^2 (1 - |q|^2 + 2 q^2 |q|^2) / ((1-q^2)^2 (1+|q|^2))
///      - 4 (q' conj(q)/(1+|q|^2))^2`.
pub fn shear_schwarzian_jets(pj: &Jet, qj: &Jet) -> Result<Complex64> {
    let sphi = schwarzian_jet(pj)?;
    let (pp, ppp, _) = first_derivs(pj);
    let (qp, qpp, _) = first_derivs(qj);
    let q = qj.value();
    let one = Complex64::new(1.0, 0.0);
    let one_minus_q2 = one - q * q;
    if one_minus_q2.norm() < 1e-12 {
        return Err(Error::DegenerateDilatation { z: qj.center() });
    }
    let aq2 = q.norm_sqr();
    let denom = 1.0 + aq2;
    let term2 = 2.0 * (q / one_minus_q2 + q.conj() / denom) * (qpp - qp * ppp / pp);
    let term3 =
        2.0 * qp * qp * (one * (1.0 - aq2) + 2.0 * q * q * aq2) / (one_minus_q2 * one_minus_q2 * denom);
    let t4 = qp * q.conj() / denom;
    Ok(sphi + term2 + term3 - 4.0 * t4 * t4)
}

pub fn shear_schwarzian(phi: &AnalyticExpr, q: &AnalyticExpr, z: Complex64) -> Result<Complex64> {
    let pj = phi.eval_jet(z, 3)?;
    let qj = q.eval_jet(z, 3)?;
    shear_schwarzian_jets(&pj, &qj)
}
