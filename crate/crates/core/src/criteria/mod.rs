//! Univalence-criterion checking: Nehari weights, threshold functions, and
//! sampled suprema of the criterion quantity over polar grids.
//!
//! A passing grid scan is evidence, not proof: the reported supremum is a
//! lower bound of the true one, and every report carries its grid so
//! refinement studies are reproducible.

mod nehari;
mod regions;
mod thresholds;

pub use nehari::{validate_nehari, Disconjugacy, NehariFunction, ValidationReport};
pub use regions::{
    balloon, check_annulus_region, check_balloon_region, reciprocal_conditions_scan,
    RegionReport, ReciprocalConditions,
};
pub use thresholds::{c_fn, c_star, eta, psi_qc, r0, rho, t_hat};

use crate::error::Result;
use crate::grid::GridSpec;
use crate::schwarzian::{self, HarmonicMapping};
use crate::AnalyticExpr;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Sampled supremum of a weighted criterion quantity.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub quantity: String,
    pub grid: GridSpec,
    pub sup: f64,
    pub witness: [f64; 2],
    pub threshold: f64,
    pub pass: bool,
    pub margin: f64,
}

fn scan_max<F>(grid: &GridSpec, f: F) -> Result<(f64, Complex64)>
where
    F: Fn(Complex64) -> Result<f64> + Sync,
{
    let pts = grid.points();
    let evaluated: Result<Vec<(f64, Complex64)>> = pts
        .par_iter()
        .map(|&z| f(z).map(|v| (v, z)))
        .collect();
    let mut best = (f64::NEG_INFINITY, Complex64::new(0.0, 0.0));
    for (v, z) in evaluated? {
        if v > best.0 {
            best = (v, z);
        }
    }
    Ok(best)
}

/// Sampled check of `Phi_f(z) <= 2 p(|z|)`: the supremum of `Phi_f / (2p)`
/// against threshold 1.
pub fn check_lift_criterion(
    m: &HarmonicMapping,
    p: &NehariFunction,
    grid: &GridSpec,
) -> Result<CriterionReport> {
    let (sup, witness) = scan_max(grid, |z| {
        let rep = schwarzian::phi_quantity(m, z)?;
        Ok(rep.phi / (2.0 * p.eval(z.norm())?))
    })?;
    Ok(CriterionReport {
        quantity: "phi_over_2p".to_string(),
        grid: *grid,
        sup,
        witness: [witness.re, witness.im],
        threshold: 1.0,
        pass: sup <= 1.0,
        margin: 1.0 - sup,
    })
}

/// `t_eff = sup (1-|z|^2)^2 Phi_f(z) / 2` over the grid, with its witness.
/// Monotone under grid refinement; always a lower bound of the true value.
pub fn effective_t(m: &HarmonicMapping, grid: &GridSpec) -> Result<(f64, Complex64)> {
    let (sup, witness) = scan_max(grid, |z| Ok(schwarzian::phi_quantity(m, z)?.weighted_phi))?;
    Ok((0.5 * sup, witness))
}

/// Same quantity along the shear-Schwarzian path: `Phi_f` for the shear with
/// `h - g = phi` and dilatation `q^2`, without constructing the shear.
pub fn effective_t_shear(
    phi: &AnalyticExpr,
    q: &AnalyticExpr,
    grid: &GridSpec,
) -> Result<(f64, Complex64)> {
    let (sup, witness) = scan_max(grid, |z| {
        let pj = phi.eval_jet(z, 3)?;
        let qj = q.eval_jet(z, 3)?;
        let sf = schwarzian::shear_schwarzian_jets(&pj, &qj)?;
        let phi_val = sf.norm() + schwarzian::curvature_term_jet(&qj);
        let w = 1.0 - z.norm_sqr();
        Ok(w * w * phi_val)
    })?;
    Ok((0.5 * sup, witness))
}
