//! Scalar threshold functions for the univalence criteria.
//!
//! All functions live on the triangle `T = {0 <= s <= t <= 1}` (plus a free
//! radius parameter where applicable) and are pure scalar math.

use crate::error::{Error, Result};

fn check_triangle(s: f64, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) || t < s {
        return Err(Error::Domain(format!(
            "(s,t)=({s},{t}) outside the triangle 0 <= s <= t <= 1"
        )));
    }
    Ok(())
}

/// Lower dilatation bound `rho(s,t,R) = max(0, R - (R+1)(t-s)/(t-s+2(1+sqrt(1+s))))`.
pub fn rho(s: f64, t: f64, r_cap: f64) -> Result<f64> {
    check_triangle(s, t)?;
    if r_cap <= 0.0 {
        return Err(Error::Domain(format!("R={r_cap} must be positive")));
    }
    let d = t - s;
    let raw = r_cap - (r_cap + 1.0) * d / (d + 2.0 * (1.0 + (1.0 + s).sqrt()));
    Ok(raw.max(0.0))
}

/// Radius at which `rho` switches from 0 to positive: `R0 = (t-s)/(2(1+sqrt(1+s)))`.
pub fn r0(s: f64, t: f64) -> Result<f64> {
    check_triangle(s, t)?;
    Ok((t - s) / (2.0 * (1.0 + (1.0 + s).sqrt())))
}

/// Dilatation cap for shears: `eta(s,t) = (t-s)/(7 + 4 sqrt(1+s))`.
pub fn eta(s: f64, t: f64) -> Result<f64> {
    check_triangle(s, t)?;
    Ok((t - s) / (7.0 + 4.0 * (1.0 + s).sqrt()))
}

/// Balloon-region constant: `c(s,t) = 3(t-s)/(4(4 + 3 sqrt(1+s)))`.
pub fn c_fn(s: f64, t: f64) -> Result<f64> {
    check_triangle(s, t)?;
    Ok(3.0 * (t - s) / (4.0 * (4.0 + 3.0 * (1.0 + s).sqrt())))
}

/// Improved balloon constant `c*`.
///
/// The proof chain bounds `(1-|z|^2)^2 Phi_f` by
/// `2s + 2c^2 + 8c^2/(1+c) + 8c(1+sqrt(1+s))`; capping `c` by a free
/// parameter `alpha` linearizes this to
/// `2s + 2c (alpha + 4 alpha/(1+alpha) + 4(1+sqrt(1+s)))`, so the admissible
/// `c` for a given `alpha` is `min(alpha, (t-s)/D(alpha))` with
/// `D(alpha) = alpha + 4 alpha/(1+alpha) + 4 + 4 sqrt(1+s)`. Golden-section
/// search over `alpha` maximizes it.
pub fn c_star(s: f64, t: f64) -> Result<f64> {
    check_triangle(s, t)?;
    if t == s {
        return Ok(0.0);
    }
    let d = t - s;
    let root = (1.0 + s).sqrt();
    let admissible = |alpha: f64| -> f64 {
        let denom = alpha + 4.0 * alpha / (1.0 + alpha) + 4.0 + 4.0 * root;
        alpha.min(d / denom)
    };
    // Unimodal: increasing while alpha binds, decreasing after.
    let (mut a, mut b) = (0.0_f64, 1.0_f64);
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = admissible(x1);
    let mut f2 = admissible(x2);
    while b - a > 1e-10 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = admissible(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = admissible(x1);
        }
    }
    Ok(admissible(0.5 * (a + b)))
}

/// Dilatation bound forcing a planar quasiconformal extension:
/// `psi(t) = ((1-sqrt(t))/(1+sqrt(t)))^2`.
pub fn psi_qc(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t={t} outside [0,1]")));
    }
    let rt = t.sqrt();
    let ratio = (1.0 - rt) / (1.0 + rt);
    Ok(ratio * ratio)
}

/// Unique `t` in `(s,1)` where `eta(s,t) = psi_qc(t)`; `eta` increases and
/// `psi_qc` decreases in `t`, so bisection has a guaranteed bracket.
pub fn t_hat(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("s={s} outside [0,1]")));
    }
    if s == 1.0 {
        // Both sides vanish at t = 1; defined by continuity.
        return Ok(1.0);
    }
    let gap = |t: f64| eta(s, t).unwrap() - psi_qc(t).unwrap();
    let (mut lo, mut hi) = (s, 1.0);
    // gap(s) = -psi(s) <= 0, gap(1) = eta(s,1) > 0 for s < 1.
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-10 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_on_the_diagonal_is_r() {
        for (s, r) in [(0.0, 0.5), (0.3, 2.0), (1.0, 0.1)] {
            assert!((rho(s, s, r).unwrap() - r).abs() < 1e-15);
        }
    }

    #[test]
    fn rho_direct_substitution() {
        // rho(0,1,1) = 1 - 2*1/(1+4) = 0.6
        assert!((rho(0.0, 1.0, 1.0).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn rho_vanishes_below_r0() {
        let (s, t) = (0.2, 0.9);
        let r_zero = r0(s, t).unwrap();
        for frac in [0.1, 0.5, 0.99] {
            assert_eq!(rho(s, t, frac * r_zero).unwrap(), 0.0);
        }
    }

    #[test]
    fn r0_values() {
        assert!((r0(0.0, 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(r0(0.4, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn rho_continuous_at_r0() {
        let (s, t) = (0.1, 0.8);
        let r_zero = r0(s, t).unwrap();
        let below = rho(s, t, r_zero - 1e-9).unwrap();
        let above = rho(s, t, r_zero + 1e-9).unwrap();
        assert!(below.abs() <= 1e-8);
        assert!(above.abs() <= 1e-8);
    }

    #[test]
    fn eta_and_c_published_maxima() {
        assert!((eta(0.0, 1.0).unwrap() - 1.0 / 11.0).abs() < 1e-15);
        assert!((c_fn(0.0, 1.0).unwrap() - 3.0 / 28.0).abs() < 1e-15);
    }

    #[test]
    fn eta_and_c_vanish_on_diagonal() {
        for s in [0.0, 0.5, 1.0] {
            assert_eq!(eta(s, s).unwrap(), 0.0);
            assert_eq!(c_fn(s, s).unwrap(), 0.0);
        }
    }

    #[test]
    fn c_star_improves_on_c() {
        let cs = c_star(0.0, 1.0).unwrap();
        assert!((cs - 0.1171).abs() < 2e-3);
        assert!(cs >= c_fn(0.0, 1.0).unwrap());
        assert_eq!(c_star(0.7, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn c_star_dominates_c_on_grid() {
        for i in 0..=10 {
            let s = i as f64 / 10.0;
            for j in i..=10 {
                let t = j as f64 / 10.0;
                assert!(c_star(s, t).unwrap() >= c_fn(s, t).unwrap() - 1e-12);
            }
        }
    }

    #[test]
    fn psi_qc_values() {
        assert_eq!(psi_qc(0.0).unwrap(), 1.0);
        assert_eq!(psi_qc(1.0).unwrap(), 0.0);
        assert!((psi_qc(0.25).unwrap() - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn t_hat_published_values() {
        assert!((t_hat(0.0).unwrap() - 0.4431).abs() < 1e-3);
        assert_eq!(t_hat(1.0).unwrap(), 1.0);
    }

    #[test]
    fn t_hat_nondecreasing() {
        let mut prev = 0.0;
        for i in 0..=20 {
            let s = i as f64 / 20.0;
            let v = t_hat(s).unwrap();
            assert!(v >= prev - 1e-9);
            prev = v;
        }
    }

    #[test]
    fn t_hat_separates_eta_and_psi() {
        for s in [0.0, 0.3, 0.7] {
            let th = t_hat(s).unwrap();
            let below = s + 0.9 * (th - s);
            let above = th + 0.1 * (1.0 - th);
            assert!(eta(s, below).unwrap() < psi_qc(below).unwrap());
            assert!(eta(s, above).unwrap() >= psi_qc(above).unwrap());
        }
    }

    #[test]
    fn domain_errors() {
        assert!(rho(0.5, 0.2, 1.0).is_err());
        assert!(rho(0.0, 1.0, 0.0).is_err());
        assert!(eta(-0.1, 0.5).is_err());
        assert!(psi_qc(1.5).is_err());
    }
}
