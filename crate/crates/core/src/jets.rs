//! Truncated Taylor-jet arithmetic over the complex numbers.
//!
//! A [`Jet`] stores the scaled Taylor coefficients `c_k = f^(k)(z0)/k!` of an
//! analytic function at a point `z0` of the open unit disk. All elementary
//! operations propagate coefficients by the usual recurrences, so a single
//! expression walk yields every derivative up to the working order.
//!
//! Branch convention: `log`, `sqrt` and `pow` use the principal branch at the
//! constant term. Continuity along paths is handled by callers.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Relative tolerance below which a leading coefficient counts as zero.
pub const LEAD_TOL: f64 = 1e-14;

/// Default working order for expression evaluation.
pub const DEFAULT_ORDER: usize = 8;

/// Truncated Taylor expansion of an analytic function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// Jet with explicit coefficients `c_0..c_N`.
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "jet needs at least a constant term");
        Jet { center, coeffs }
    }

    /// The constant function `c` to the given order.
    pub fn constant(center: Complex64, c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = c;
        Jet { center, coeffs }
    }

    /// The identity `z`, expanded at `center`.
    pub fn variable(center: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = center;
        if order >= 1 {
            coeffs[1] = Complex64::new(1.0, 0.0);
        }
        Jet { center, coeffs }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Value of the function at the center (`c_0`).
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `k`-th derivative at the center, `k! * c_k`.
    pub fn derivative(&self, k: usize) -> Result<Complex64> {
        if k > self.order() {
            return Err(Error::OrderTooLow {
                order: self.order(),
                needed: k,
            });
        }
        let mut fact = 1.0;
        for j in 2..=k {
            fact *= j as f64;
        }
        Ok(self.coeffs[k] * fact)
    }

    /// Largest coefficient magnitude, used for relative zero tests.
    fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn lead_is_zero(&self) -> bool {
        let scale = self.max_coeff().max(1.0);
        self.coeffs[0].norm() < LEAD_TOL * scale
    }

    fn check_same_center(&self, other: &Jet) {
        debug_assert_eq!(
            self.center, other.center,
            "jet arithmetic requires a common center"
        );
    }

    pub fn add(&self, other: &Jet) -> Jet {
        self.check_same_center(other);
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect();
        Jet::new(self.center, coeffs)
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.check_same_center(other);
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect();
        Jet::new(self.center, coeffs)
    }

    pub fn neg(&self) -> Jet {
        Jet::new(self.center, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: Complex64) -> Jet {
        Jet::new(self.center, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Jet) -> Jet {
        self.check_same_center(other);
        let n = self.order().min(other.order());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=k {
                acc += self.coeffs[j] * other.coeffs[k - j];
            }
            coeffs[k] = acc;
        }
        Jet::new(self.center, coeffs)
    }

    /// Quotient series. Fails when the divisor's constant term vanishes,
    /// which is how `h' = 0` style singularities surface.
    pub fn div(&self, other: &Jet) -> Result<Jet> {
        self.check_same_center(other);
        if other.lead_is_zero() {
            return Err(Error::DivisionByZeroLeadCoefficient);
        }
        let n = self.order().min(other.order());
        let b0 = other.coeffs[0];
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * coeffs[k - j];
            }
            coeffs[k] = acc / b0;
        }
        Ok(Jet::new(self.center, coeffs))
    }

    /// exp(f). Recurrence `k e_k = sum_{j=1..k} j a_j e_{k-j}`.
    pub fn exp(&self) -> Jet {
        let n = self.order();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += (j as f64) * self.coeffs[j] * coeffs[k - j];
            }
            coeffs[k] = acc / (k as f64);
        }
        Jet::new(self.center, coeffs)
    }

    /// Principal-branch log(f). Requires a nonzero constant term.
    pub fn log(&self) -> Result<Jet> {
        if self.lead_is_zero() {
            return Err(Error::BranchPointAtCenter);
        }
        let n = self.order();
        let a0 = self.coeffs[0];
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = a0.ln();
        // k a0 l_k = k a_k - sum_{j=1..k-1} j l_j a_{k-j}
        for k in 1..=n {
            let mut acc = (k as f64) * self.coeffs[k];
            for j in 1..k {
                acc -= (j as f64) * coeffs[j] * self.coeffs[k - j];
            }
            coeffs[k] = acc / ((k as f64) * a0);
        }
        Ok(Jet::new(self.center, coeffs))
    }

    /// Principal-branch f^alpha. Recurrence avoids exp/log roundoff:
    /// `k a0 p_k = sum_{j=1..k} (alpha j - (k - j)) a_j p_{k-j}`.
    pub fn pow(&self, alpha: Complex64) -> Result<Jet> {
        // Integer exponents of modest size are exact via repeated squaring
        // and do not need a nonzero constant term.
        if alpha.im == 0.0 && alpha.re.fract() == 0.0 && alpha.re.abs() <= 64.0 {
            let m = alpha.re as i64;
            return self.powi(m);
        }
        if self.lead_is_zero() {
            return Err(Error::BranchPointAtCenter);
        }
        let n = self.order();
        let a0 = self.coeffs[0];
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = a0.powc(alpha);
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                let w = alpha * (j as f64) - Complex64::new((k - j) as f64, 0.0);
                acc += w * self.coeffs[j] * coeffs[k - j];
            }
            coeffs[k] = acc / ((k as f64) * a0);
        }
        Ok(Jet::new(self.center, coeffs))
    }

    fn powi(&self, m: i64) -> Result<Jet> {
        if m < 0 {
            let pos = self.powi(-m)?;
            return Jet::constant(self.center, Complex64::new(1.0, 0.0), self.order()).div(&pos);
        }
        let mut acc = Jet::constant(self.center, Complex64::new(1.0, 0.0), self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Principal-branch square root.
    pub fn sqrt(&self) -> Result<Jet> {
        self.pow(Complex64::new(0.5, 0.0))
    }

    /// Coefficient-wise derivative series, one order lower.
    pub fn differentiate(&self) -> Jet {
        if self.order() == 0 {
            return Jet::constant(self.center, Complex64::new(0.0, 0.0), 0);
        }
        let coeffs = (1..=self.order())
            .map(|k| self.coeffs[k] * (k as f64))
            .collect();
        Jet::new(self.center, coeffs)
    }

    /// Composition `outer(self)`: `outer` must be expanded at `self.value()`.
    pub fn compose(&self, outer: &Jet) -> Jet {
        debug_assert!(
            (outer.center - self.value()).norm() < 1e-9,
            "outer jet must be centered at the inner value"
        );
        let n = self.order().min(outer.order());
        // Horner in the shifted inner jet (constant term removed).
        let mut shifted = self.clone();
        shifted.coeffs.truncate(n + 1);
        shifted.coeffs[0] = Complex64::new(0.0, 0.0);
        let mut acc = Jet::constant(self.center, outer.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&shifted);
            acc.coeffs[0] += outer.coeffs[k];
        }
        acc
    }

    /// Evaluate the truncated polynomial at `z` (Horner).
    pub fn eval_poly(&self, z: Complex64) -> Complex64 {
        let u = z - self.center;
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }
}
