//! Nehari weight functions and their numerical validation.
//!
//! A Nehari function `p` is positive, continuous and even on `(-1,1)`,
//! `(1-x^2)^2 p(x)` is nonincreasing on `(0,1)`, and `u'' + p u = 0` is
//! disconjugate. The three built-ins are valid by the classical theory;
//! custom weights are validated numerically: one even solution is integrated
//! by adaptive Runge-Kutta and disconjugacy is certified by its positivity.

use crate::error::{Error, Result};
use crate::expr::AnalyticExpr;
use num_complex::Complex64;
use serde::Serialize;

const DELTA: f64 = 1e-4;

/// Weight function in the univalence criterion `Phi_f <= 2 p(|z|)`.
#[derive(Debug, Clone)]
pub enum NehariFunction {
    /// `1/(1-x^2)^2`
    Quad,
    /// `2/(1-x^2)`
    Hyper,
    /// `pi^2/4`
    ConstPiSq4,
    /// User-supplied even weight, evaluated on the real interval.
    Custom(AnalyticExpr),
}

impl NehariFunction {
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x.abs() >= 1.0 {
            return Err(Error::Domain(format!("x={x} outside (-1,1)")));
        }
        match self {
            NehariFunction::Quad => {
                let w = 1.0 - x * x;
                Ok(1.0 / (w * w))
            }
            NehariFunction::Hyper => Ok(2.0 / (1.0 - x * x)),
            NehariFunction::ConstPiSq4 => Ok(std::f64::consts::PI.powi(2) / 4.0),
            NehariFunction::Custom(e) => {
                let v = e.eval(Complex64::new(x, 0.0))?;
                if v.im.abs() > 1e-10 * v.re.abs().max(1.0) {
                    return Err(Error::Evaluation(format!(
                        "weight is not real at x={x}: {v}"
                    )));
                }
                Ok(v.re)
            }
        }
    }

    /// Parse a CLI weight spec: a built-in name or an expression.
    pub fn parse_spec(spec: &str) -> Result<NehariFunction> {
        match spec {
            "quad" => Ok(NehariFunction::Quad),
            "hyper" => Ok(NehariFunction::Hyper),
            "const" => Ok(NehariFunction::ConstPiSq4),
            other => Ok(NehariFunction::Custom(AnalyticExpr::parse(other)?)),
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, NehariFunction::Custom(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Disconjugacy {
    /// The even solution stays positive on the integration interval.
    Verified,
    /// The solution vanishes only within `delta` of the endpoints.
    Inconclusive,
    /// Interior zero of the even solution at the recorded location.
    Fail { zero: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub positive: bool,
    pub even: bool,
    pub weight_monotone: bool,
    pub disconjugacy: Disconjugacy,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.positive
            && self.even
            && self.weight_monotone
            && self.disconjugacy == Disconjugacy::Verified
    }
}

/// Grid checks plus the disconjugacy shooting test.
pub fn validate_nehari(p: &NehariFunction, grid_n: usize) -> Result<ValidationReport> {
    let n = grid_n.max(8);
    let mut positive = true;
    let mut even = true;
    for j in 0..n {
        let x = (1.0 - DELTA) * (j as f64 + 0.5) / (n as f64);
        let vp = p.eval(x)?;
        let vm = p.eval(-x)?;
        if vp <= 0.0 || vm <= 0.0 {
            positive = false;
        }
        if (vp - vm).abs() > 1e-9 * vp.abs().max(1.0) {
            even = false;
        }
    }
    let mut weight_monotone = true;
    let mut prev = f64::INFINITY;
    for j in 0..n {
        let x = (1.0 - DELTA) * (j as f64 + 0.5) / (n as f64);
        let w = (1.0 - x * x).powi(2) * p.eval(x)?;
        if w > prev + 1e-9 * prev.abs().max(1.0) {
            weight_monotone = false;
        }
        prev = w;
    }
    let disconjugacy = shoot_even_solution(p)?;
    Ok(ValidationReport {
        positive,
        even,
        weight_monotone,
        disconjugacy,
    })
}

/// Integrate `u'' + p u = 0`, `u(0)=1`, `u'(0)=0` on `[0, 1-delta]` by
/// adaptive RK45 (Cash-Karp), watching for a sign change of `u`. By evenness
/// of `p`, positivity on the mirror half follows.
fn shoot_even_solution(p: &NehariFunction) -> Result<Disconjugacy> {
    let x_end = 1.0 - DELTA;
    let mut x = 0.0;
    let mut y = [1.0_f64, 0.0_f64]; // (u, u')
    let mut h = 1e-4;
    let tol = 1e-10;

    while x < x_end {
        if x + h > x_end {
            h = x_end - x;
        }
        let (y5, err) = cash_karp_step(p, x, y, h)?;
        let scale = tol + tol * y[0].abs().max(y[1].abs());
        let ratio = err / scale;
        if ratio <= 1.0 {
            // Accepted. Check for a sign change on this step.
            if y[0] > 0.0 && y5[0] <= 0.0 {
                let zero = bisect_zero(p, x, y, h)?;
                return Ok(if zero >= x_end - DELTA {
                    Disconjugacy::Inconclusive
                } else {
                    Disconjugacy::Fail { zero }
                });
            }
            x += h;
            y = y5;
        }
        let factor = if ratio > 0.0 {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        h = h.max(1e-12);
    }
    Ok(Disconjugacy::Verified)
}

/// One Cash-Karp 5(4) step; returns the 5th-order solution and an error norm.
fn cash_karp_step(
    p: &NehariFunction,
    x: f64,
    y: [f64; 2],
    h: f64,
) -> Result<([f64; 2], f64)> {
    const A: [f64; 5] = [1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0];
    const B: [[f64; 5]; 5] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0],
        [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ];
    const C5: [f64; 6] = [
        37.0 / 378.0,
        0.0,
        250.0 / 621.0,
        125.0 / 594.0,
        0.0,
        512.0 / 1771.0,
    ];
    const C4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        1.0 / 4.0,
    ];

    let deriv = |x: f64, y: [f64; 2]| -> Result<[f64; 2]> {
        Ok([y[1], -p.eval(x)? * y[0]])
    };

    let mut k = [[0.0; 2]; 6];
    k[0] = deriv(x, y)?;
    for stage in 1..6 {
        let mut yi = y;
        for (j, kj) in k.iter().enumerate().take(stage) {
            yi[0] += h * B[stage - 1][j] * kj[0];
            yi[1] += h * B[stage - 1][j] * kj[1];
        }
        k[stage] = deriv(x + A[stage - 1] * h, yi)?;
    }
    let mut y5 = y;
    let mut y4 = y;
    for (j, kj) in k.iter().enumerate() {
        y5[0] += h * C5[j] * kj[0];
        y5[1] += h * C5[j] * kj[1];
        y4[0] += h * C4[j] * kj[0];
        y4[1] += h * C4[j] * kj[1];
    }
    let err = (y5[0] - y4[0]).abs().max((y5[1] - y4[1]).abs());
    Ok((y5, err))
}

/// Locate the zero of `u` inside an accepted step by bisection on substeps.
fn bisect_zero(p: &NehariFunction, x0: f64, y0: [f64; 2], h: f64) -> Result<f64> {
    let u_at = |frac: f64| -> Result<f64> {
        // Fixed small-step RK4 from (x0, y0) to x0 + frac*h.
        let n = 64;
        let mut y = y0;
        let mut x = x0;
        let dx = frac * h / n as f64;
        for _ in 0..n {
            y = rk4_step(p, x, y, dx)?;
            x += dx;
        }
        Ok(y[0])
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if u_at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(x0 + 0.5 * (lo + hi) * h)
}

fn rk4_step(p: &NehariFunction, x: f64, y: [f64; 2], h: f64) -> Result<[f64; 2]> {
    let f = |x: f64, y: [f64; 2]| -> Result<[f64; 2]> { Ok([y[1], -p.eval(x)? * y[0]]) };
    let k1 = f(x, y)?;
    let k2 = f(x + 0.5 * h, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]])?;
    let k3 = f(x + 0.5 * h, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]])?;
    let k4 = f(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]])?;
    Ok([
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_quad_validates() {
        // u(x) = sqrt(1-x^2) solves u'' + u/(1-x^2)^2 = 0 and stays positive.
        let rep = validate_nehari(&NehariFunction::Quad, 200).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn builtin_hyper_validates() {
        let rep = validate_nehari(&NehariFunction::Hyper, 200).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn builtin_const_validates() {
        // u(x) = cos(pi x / 2) vanishes exactly at the endpoints.
        let rep = validate_nehari(&NehariFunction::ConstPiSq4, 200).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn constant_ten_fails_with_zero_location() {
        // u = cos(sqrt(10) x) has its first zero at pi/(2 sqrt(10)) ~ 0.4967.
        let p = NehariFunction::Custom(AnalyticExpr::parse("10").unwrap());
        let rep = validate_nehari(&p, 200).unwrap();
        match rep.disconjugacy {
            Disconjugacy::Fail { zero } => {
                let expect = std::f64::consts::PI / (2.0 * 10.0_f64.sqrt());
                assert!((zero - expect).abs() < 1e-6, "zero={zero}");
            }
            other => panic!("expected failure, got {other:?}"),
        }
        // The weight (1-x^2)^2 * 10 is also not monotone... it is decreasing
        // on (0,1), so only disconjugacy fails.
        assert!(!rep.pass());
    }

    #[test]
    fn odd_weight_flagged() {
        let p = NehariFunction::Custom(AnalyticExpr::parse("1+z").unwrap());
        let rep = validate_nehari(&p, 100).unwrap();
        assert!(!rep.even);
    }
}
