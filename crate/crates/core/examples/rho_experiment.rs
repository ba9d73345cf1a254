//! Experiment: how much slack is there in the lower dilatation bound `rho`?
//!
//! For `R` in the interesting window `(R0, (t-s)/2]` the criterion is stated
//! with dilatations confined to the annulus `[rho(s,t,R), R]`. Whether `rho`
//! can be lowered there is open. This script probes it empirically: for a
//! few `(s, t)` and a sweep of `R`, it builds the annulus-extremal family
//! `omega(z) = sqrt(lo * R) * exp(beta z)` (modulus exactly spanning
//! `[lo, R]` on the disk) with the lower bound scaled by a factor
//! `f <= 1`, and reports the measured `effective_t` against the target `t`.
//!
//! A row with `f < 1` and `t_eff <= t` is an instance where this particular
//! family tolerates a lower bound below `rho` — suggestive, not a proof, and
//! one-sided: the family is extremal for the annulus constraint, not
//! necessarily for the criterion.
//!
//! Run with: `cargo run --release --example rho_experiment`

use schwarzlift::criteria::{self, r0, rho};
use schwarzlift::grid::GridSpec;
use schwarzlift::verify::power_map;
use schwarzlift::{AnalyticExpr, HarmonicMapping};

fn main() -> schwarzlift::Result<()> {
    let grid = GridSpec::new(64, 96, 0.995)?;
    let factors = [1.0_f64, 0.75, 0.5, 0.25, 0.05];

    println!(
        "{:>5} {:>5} {:>7} {:>9} {:>6} {:>9} {:>9}  verdict",
        "s", "t", "R", "rho", "f", "lo", "t_eff"
    );
    for &(s, t) in &[(0.0, 1.0), (0.0, 0.5), (0.25, 0.75)] {
        let knee = r0(s, t)?;
        let r_top = 0.5 * (t - s);
        let h = power_map(s)?;
        for step in 1..=4 {
            let r_cap = knee + (r_top - knee) * step as f64 / 4.0;
            let bound = rho(s, t, r_cap)?;
            for &f in &factors {
                let lo = (f * bound).max(1e-9);
                let beta = 0.5 * (r_cap / lo).ln();
                let q = AnalyticExpr::parse(&format!(
                    "{:.17}*exp({:.17}*z)",
                    (lo * r_cap).sqrt().sqrt(),
                    0.5 * beta
                ))?;
                let m = HarmonicMapping::new(h.clone(), q);
                let (teff, _) = criteria::effective_t(&m, &grid)?;
                let verdict = if teff <= t + 1e-6 { "holds" } else { "EXCEEDS" };
                println!(
                    "{s:>5.2} {t:>5.2} {r_cap:>7.4} {bound:>9.5} {f:>6.2} {lo:>9.5} {teff:>9.5}  {verdict}"
                );
            }
        }
        println!();
    }
    println!("effective_t is a grid supremum (lower bound of the true value);");
    println!("'holds' rows with f < 1 indicate slack for this family only.");
    Ok(())
}
