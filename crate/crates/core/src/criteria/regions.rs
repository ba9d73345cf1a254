//! Dilatation-region predicates: annulus and balloon hypotheses, plus the
//! conjugated (reciprocal-dilatation) forms.

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::schwarzian::HarmonicMapping;
use crate::AnalyticExpr;
use num_complex::Complex64;
use serde::Serialize;

const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub pass: bool,
    pub checked: usize,
    pub violations: usize,
    /// Up to a few offending sample points, as `[re, im]`.
    pub witnesses: Vec<[f64; 2]>,
}

impl RegionReport {
    fn from_violations(checked: usize, viol: Vec<Complex64>) -> Self {
        RegionReport {
            pass: viol.is_empty(),
            checked,
            violations: viol.len(),
            witnesses: viol
                .iter()
                .take(MAX_WITNESSES)
                .map(|z| [z.re, z.im])
                .collect(),
        }
    }
}

/// Is `omega(z) = q(z)^2` sampled inside the closed annulus `[rho, R]`?
pub fn check_annulus_region(
    m: &HarmonicMapping,
    rho: f64,
    r_cap: f64,
    grid: &GridSpec,
) -> Result<RegionReport> {
    let pts = grid.points();
    let mut viol = Vec::new();
    for &z in &pts {
        let q = m.q.eval(z)?;
        let om = q.norm_sqr();
        if om < rho - 1e-12 || om > r_cap + 1e-12 {
            viol.push(z);
        }
    }
    Ok(RegionReport::from_violations(pts.len(), viol))
}

/// Balloon-region membership: `0 < 1 - |w| <= c |1 - w|`.
///
/// Ties within `1e-14` of the boundary count as outside; strict inequalities
/// are taken at face value in double precision.
pub fn balloon(w: Complex64, c: f64) -> bool {
    let lhs = 1.0 - w.norm();
    if lhs <= 0.0 {
        return false;
    }
    let rhs = c * (Complex64::new(1.0, 0.0) - w).norm();
    lhs <= rhs - 1e-14
}

/// Does the sampled dilatation satisfy the balloon condition? Also re-checks
/// the implied lower bound `|w| >= (1-c)/(1+c)` per point.
pub fn check_balloon_region(
    m: &HarmonicMapping,
    c: f64,
    grid: &GridSpec,
) -> Result<RegionReport> {
    if !(0.0..1.0).contains(&c) || c == 0.0 {
        return Err(Error::Domain(format!("c={c} outside (0,1)")));
    }
    let implied = (1.0 - c) / (1.0 + c);
    let pts = grid.points();
    let mut viol = Vec::new();
    for &z in &pts {
        let q = m.q.eval(z)?;
        let w = q * q;
        if !balloon(w, c) || w.norm() < implied - 1e-12 {
            viol.push(z);
        }
    }
    Ok(RegionReport::from_violations(pts.len(), viol))
}

/// Hypotheses for the conjugated mapping, whose dilatation is the reciprocal
/// `omega_hat = 1/omega`. Both predicates evaluate on `omega = 1/omega_hat`,
/// which is exact algebra (`|omega_hat| - 1 <= c |1 - omega_hat|` is
/// `1 - |omega| <= c |1 - omega|` after multiplying through by `|omega|`).
#[derive(Debug, Clone, Copy)]
pub struct ReciprocalConditions {
    pub eta: f64,
    pub c: f64,
}

impl ReciprocalConditions {
    pub fn new(eta: f64, c: f64) -> Self {
        ReciprocalConditions { eta, c }
    }

    fn invert(&self, omega_hat: Complex64) -> Result<Complex64> {
        if omega_hat.norm() < 1e-14 {
            return Err(Error::ZeroDilatation {
                z: Complex64::new(f64::NAN, f64::NAN),
            });
        }
        Ok(Complex64::new(1.0, 0.0) / omega_hat)
    }

    /// `|omega_hat| > 1/eta`, i.e. `|omega| < eta` (strict).
    pub fn first_holds(&self, omega_hat: Complex64) -> Result<bool> {
        let om = self.invert(omega_hat)?;
        Ok(om.norm() < self.eta)
    }

    /// `0 < |omega_hat| - 1 <= c |1 - omega_hat|`, i.e. the balloon
    /// condition on `omega`.
    pub fn second_holds(&self, omega_hat: Complex64) -> Result<bool> {
        let om = self.invert(omega_hat)?;
        Ok(balloon(om, self.c))
    }
}

/// Scan an analytic `omega_hat` (no zeros allowed on the grid) and report
/// which of the two conjugated hypotheses hold at every sample.
pub fn reciprocal_conditions_scan(
    omega_hat: &AnalyticExpr,
    cond: ReciprocalConditions,
    grid: &GridSpec,
) -> Result<(bool, bool)> {
    let mut first = true;
    let mut second = true;
    for z in grid.points() {
        let w_hat = omega_hat.eval(z)?;
        if w_hat.norm() < 1e-14 {
            return Err(Error::ZeroDilatation { z });
        }
        first &= cond.first_holds(w_hat)?;
        second &= cond.second_holds(w_hat)?;
    }
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> GridSpec {
        GridSpec::new(20, 16, 0.95).unwrap()
    }

    fn mapping(q: &str) -> HarmonicMapping {
        HarmonicMapping::new(
            AnalyticExpr::parse("z").unwrap(),
            AnalyticExpr::parse(q).unwrap(),
        )
    }

    #[test]
    fn constant_midpoint_passes_annulus() {
        let (rho, r_cap) = (0.2, 0.6);
        let q = format!("sqrt({})", 0.5 * (rho + r_cap));
        let rep = check_annulus_region(&mapping(&q), rho, r_cap, &grid()).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn rz2_fails_positive_rho_at_origin() {
        let rep = check_annulus_region(&mapping("sqrt(0.5)*z"), 0.1, 0.5, &grid()).unwrap();
        assert!(!rep.pass);
        assert!(rep.witnesses.contains(&[0.0, 0.0]));
    }

    #[test]
    fn rz2_passes_zero_rho() {
        let rep = check_annulus_region(&mapping("sqrt(0.5)*z"), 0.0, 0.5, &grid()).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn balloon_predicate_geometry() {
        let c = 0.25;
        // Small |w| violates the implied bound: at w=0 the condition is 1 <= c.
        assert!(!balloon(c64(0.0, 0.0), c));
        assert!(!balloon(c64(0.3, 0.0), c));
        // Near the vertex w=1 on the real axis: 1-|w| = |1-w| > c|1-w|.
        assert!(!balloon(c64(1.0 - 1e-6, 0.0), c));
        // Deep on the negative real axis: 1-rho <= c(1+rho) for rho near 1.
        assert!(balloon(c64(-0.95, 0.0), c));
        // Outside the closed disk fails the strict positivity.
        assert!(!balloon(c64(1.0, 0.0), c));
        assert!(!balloon(c64(-1.1, 0.0), c));
    }

    #[test]
    fn constant_negative_dilatation_passes_balloon() {
        let c = 0.25;
        let rho = (1.0 - c) / (1.0 + c) + 0.05;
        // q = sqrt(-rho) = i sqrt(rho), so omega = -rho.
        let q = format!("i*sqrt({rho})");
        let rep = check_balloon_region(&mapping(&q), c, &grid()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn reciprocal_conditions_match_direct_forms() {
        let cond = ReciprocalConditions::new(1.0 / 11.0, 3.0 / 28.0);
        // omega_hat = 12 => |omega| = 1/12 < 1/11.
        assert!(cond.first_holds(c64(12.0, 0.0)).unwrap());
        // omega_hat = 1 => omega = 1: both strict conditions fail.
        assert!(!cond.first_holds(c64(1.0, 0.0)).unwrap());
        assert!(!cond.second_holds(c64(1.0, 0.0)).unwrap());
    }

    #[test]
    fn reciprocal_second_is_balloon_on_omega() {
        let cond = ReciprocalConditions::new(0.1, 0.3);
        for w in [c64(-0.9, 0.05), c64(0.6, 0.5), c64(-0.4, 0.0), c64(0.9, 0.1)] {
            let w_hat = c64(1.0, 0.0) / w;
            assert_eq!(
                cond.second_holds(w_hat).unwrap(),
                balloon(w, 0.3),
                "mismatch at {w}"
            );
        }
    }

    #[test]
    fn zero_omega_hat_rejected() {
        let cond = ReciprocalConditions::new(0.1, 0.3);
        assert!(matches!(
            cond.first_holds(c64(0.0, 0.0)),
            Err(Error::ZeroDilatation { .. })
        ));
    }
}
