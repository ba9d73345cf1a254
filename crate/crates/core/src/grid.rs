//! Polar sampling grids on the unit disk.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Polar grid: `nr` radii uniformly in `[0, r_max]`, `ntheta` angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nr: usize,
    pub ntheta: usize,
    pub r_max: f64,
}

impl GridSpec {
    /// Default scan used by the criterion checks: 200 x 256 up to r = 0.999.
    pub const DEFAULT: GridSpec = GridSpec {
        nr: 200,
        ntheta: 256,
        r_max: 0.999,
    };

    pub fn new(nr: usize, ntheta: usize, r_max: f64) -> Result<Self> {
        if nr < 2 || ntheta < 3 || r_max <= 0.0 || r_max >= 1.0 {
            return Err(Error::Domain(format!(
                "invalid grid: nr={nr}, ntheta={ntheta}, r_max={r_max}"
            )));
        }
        Ok(GridSpec { nr, ntheta, r_max })
    }

    pub fn radius(&self, j: usize) -> f64 {
        self.r_max * (j as f64) / ((self.nr - 1) as f64)
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * (k as f64) / (self.ntheta as f64)
    }

    pub fn point(&self, j: usize, k: usize) -> Complex64 {
        Complex64::from_polar(self.radius(j), self.angle(k))
    }

    /// All distinct sample points: the origin once, then the rings.
    pub fn points(&self) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity((self.nr - 1) * self.ntheta + 1);
        pts.push(Complex64::new(0.0, 0.0));
        for j in 1..self.nr {
            for k in 0..self.ntheta {
                pts.push(self.point(j, k));
            }
        }
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_grids() {
        assert!(GridSpec::new(1, 8, 0.9).is_err());
        assert!(GridSpec::new(10, 2, 0.9).is_err());
        assert!(GridSpec::new(10, 8, 1.0).is_err());
    }

    #[test]
    fn point_count() {
        let g = GridSpec::new(5, 8, 0.9).unwrap();
        assert_eq!(g.points().len(), 4 * 8 + 1);
        assert!((g.radius(4) - 0.9).abs() < 1e-15);
    }
}
