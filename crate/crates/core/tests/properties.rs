//! Randomized invariant suites: Mobius invariance and the cocycle rule for
//! the Schwarzian, expression print/parse round-trips, jet field axioms.

use num_complex::Complex64;
use proptest::prelude::*;
use schwarzlift::expr::AnalyticExpr;
use schwarzlift::jets::Jet;
use schwarzlift::schwarzian;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.85f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn small_coeff() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| c64(re, im))
}

fn catalog(ix: usize) -> AnalyticExpr {
    let texts = [
        "z",
        "z/(1-z)",
        "exp(0.5*z)",
        "z - 0.25*z^2",
        "((1+z)/(1-z))^0.5",
        "log(1/(1-z))",
    ];
    AnalyticExpr::parse(texts[ix % texts.len()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// S(M o f) = S(f) for Mobius M.
    #[test]
    fn mobius_invariance(
        z in disk_point(),
        ix in 0usize..6,
        a in small_coeff(),
        b in small_coeff(),
    ) {
        // Build M with determinant bounded away from zero.
        let (c, d) = (c64(0.1, -0.2), c64(1.5, 0.3));
        prop_assume!((a * d - b * c).norm() > 0.1);
        let f = catalog(ix);
        let mob = AnalyticExpr::parse(&format!(
            "mobius({},{},{},{})",
            fmt(a), fmt(b), fmt(c), fmt(d)
        )).unwrap();
        let composed = mob.compose(f.clone());
        let sf = schwarzian::schwarzian_analytic(&f, z);
        let smf = schwarzian::schwarzian_analytic(&composed, z);
        if let (Ok(sf), Ok(smf)) = (sf, smf) {
            let scale = sf.norm().max(1.0);
            prop_assert!((sf - smf).norm() < 1e-7 * scale, "{sf} vs {smf}");
        }
    }

    /// Cocycle rule: S(f o g) = (S(f) o g) g'^2 + S(g).
    #[test]
    fn cocycle_rule(z in disk_point(), fi in 0usize..6, gi in 0usize..4) {
        let f = catalog(fi);
        // Inner maps keep the disk inside the evaluation domain.
        let g = AnalyticExpr::parse(["0.5*z", "0.4*z^2", "z/(2-z)", "0.3*z + 0.2*z^2"][gi]).unwrap();
        let gj = g.eval_jet(z, 1).unwrap();
        let (gz, gp) = (gj.value(), gj.coeffs()[1]);
        prop_assume!(gz.norm() < 0.98 && gp.norm() > 1e-3);
        let sfg = schwarzian::schwarzian_analytic(&f.clone().compose(g.clone()), z);
        let sf_at_g = schwarzian::schwarzian_analytic(&f, gz);
        let sg = schwarzian::schwarzian_analytic(&g, z);
        if let (Ok(sfg), Ok(sf_at_g), Ok(sg)) = (sfg, sf_at_g, sg) {
            let rhs = sf_at_g * gp * gp + sg;
            let scale = rhs.norm().max(1.0);
            prop_assert!((sfg - rhs).norm() < 1e-7 * scale);
        }
    }

    /// The harmonic Schwarzian depends on the dilatation only through
    /// omega = q^2: replacing q by -q changes nothing.
    #[test]
    fn dilatation_sign_irrelevant(z in disk_point(), hi in 0usize..6, qi in 0usize..3) {
        let h = catalog(hi);
        let q_text = ["0.5*z", "0.3", "0.4*z^2"][qi];
        let q = AnalyticExpr::parse(q_text).unwrap();
        let nq = AnalyticExpr::parse(&format!("-({q_text})")).unwrap();
        let m1 = schwarzlift::HarmonicMapping::new(h.clone(), q);
        let m2 = schwarzlift::HarmonicMapping::new(h, nq);
        if let (Ok(a), Ok(b)) = (
            schwarzian::harmonic_schwarzian(&m1, z),
            schwarzian::harmonic_schwarzian(&m2, z),
        ) {
            prop_assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
        }
    }

    /// Display output re-parses to the same function.
    #[test]
    fn print_parse_roundtrip(e in expr_tree(), z in disk_point()) {
        let text = e.to_string();
        let back = AnalyticExpr::parse(&text);
        prop_assert!(back.is_ok(), "'{text}' failed to re-parse");
        let back = back.unwrap();
        match (e.eval(z), back.eval(z)) {
            (Ok(a), Ok(b)) => {
                prop_assert!((a - b).norm() < 1e-9 * a.norm().max(1.0), "'{text}': {a} vs {b}");
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "'{text}': eval mismatch {a:?} vs {b:?}"),
        }
    }

    /// Jets form a commutative ring with exact small-integer arithmetic.
    #[test]
    fn jet_ring_axioms(
        a in proptest::collection::vec(-4i32..=4, 4),
        b in proptest::collection::vec(-4i32..=4, 4),
        c in proptest::collection::vec(-4i32..=4, 4),
    ) {
        let mk = |v: &[i32]| Jet::new(
            c64(0.0, 0.0),
            v.iter().map(|&k| c64(k as f64, 0.0)).collect(),
        );
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        prop_assert_eq!(ab.coeffs(), ba.coeffs());
        let left = a.mul(&b.add(&c));
        let right = a.mul(&b).add(&a.mul(&c));
        prop_assert_eq!(left.coeffs(), right.coeffs());
    }

    /// Division undoes multiplication away from zero leading coefficients.
    #[test]
    fn jet_div_roundtrip(
        a in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 5),
        b in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 5),
    ) {
        prop_assume!(b[0].0.abs() + b[0].1.abs() > 0.2);
        let mk = |v: &[(f64, f64)]| Jet::new(
            c64(0.0, 0.0),
            v.iter().map(|&(re, im)| c64(re, im)).collect(),
        );
        let (a, b) = (mk(&a), mk(&b));
        let back = a.mul(&b).div(&b).unwrap();
        let scale = a.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
        for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
            prop_assert!((x - y).norm() < 1e-10 * scale);
        }
    }
}

fn fmt(c: Complex64) -> String {
    format!("({:.6}+{:.6}i)", c.re, c.im)
}

/// Random expression trees over the printable constructors.
fn expr_tree() -> impl Strategy<Value = AnalyticExpr> {
    let leaf = prop_oneof![
        Just(AnalyticExpr::var()),
        (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| AnalyticExpr::constant(c64(re, im))),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| AnalyticExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| AnalyticExpr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| AnalyticExpr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| AnalyticExpr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), 1i32..4).prop_map(|(a, k)| AnalyticExpr::Pow(Box::new(a), c64(k as f64, 0.0))),
            inner.clone().prop_map(|a| AnalyticExpr::Exp(Box::new(a))),
            inner.clone().prop_map(|a| AnalyticExpr::Log(Box::new(a))),
            inner.prop_map(|a| AnalyticExpr::Sqrt(Box::new(a))),
        ]
    })
}
