//! Weierstrass-Enneper lifts of harmonic mappings to minimal surfaces, mesh
//! generation, and OBJ/PLY export.
//!
//! A harmonic map `f = h + conj(g)` with dilatation `omega = q^2` lifts to
//! the minimal graph `(Re f, Im f, W)` with height
//! `W(z) = 2 Im int_0^z q(zeta) h'(zeta) d zeta`.

use crate::error::{Error, Result};
use crate::expr::AnalyticExpr;
use crate::grid::GridSpec;
use crate::schwarzian::{gauss_curvature_jets, HarmonicMapping};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write as _;
use std::path::Path;

pub mod quad {
    //! Composite Gauss-Legendre quadrature along straight segments.

    use super::*;

    /// 16-point Gauss-Legendre nodes on `[-1, 1]` (positive half).
    const GL_NODES: [f64; 8] = [
        0.095_012_509_837_637_44,
        0.281_603_550_779_258_9,
        0.458_016_777_657_227_4,
        0.617_876_244_402_643_7,
        0.755_404_408_355_003_0,
        0.865_631_202_387_831_7,
        0.944_575_023_073_232_6,
        0.989_400_934_991_649_9,
    ];
    const GL_WEIGHTS: [f64; 8] = [
        0.189_450_610_455_068_5,
        0.182_603_415_044_923_6,
        0.169_156_519_395_002_5,
        0.149_595_988_816_576_7,
        0.124_628_971_255_533_9,
        0.095_158_511_682_492_8,
        0.062_253_523_938_647_9,
        0.027_152_459_411_754_1,
    ];

    #[derive(Debug, Clone, Copy)]
    pub struct QuadratureSpec {
        /// Maximum length of one quadrature segment.
        pub max_segment: f64,
        /// Tolerance for the halved-segment refinement check.
        pub refine_tol: f64,
    }

    impl Default for QuadratureSpec {
        fn default() -> Self {
            QuadratureSpec {
                max_segment: 0.05,
                refine_tol: 1e-8,
            }
        }
    }

    fn composite<F>(f: &F, a: Complex64, b: Complex64, segments: usize) -> Result<Complex64>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let mut total = Complex64::new(0.0, 0.0);
        let step = (b - a) / segments as f64;
        for s in 0..segments {
            let lo = a + step * s as f64;
            let mid = lo + 0.5 * step;
            let half = 0.5 * step;
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
                acc += *w * (f(mid + half * *x)? + f(mid - half * *x)?);
            }
            total += half * acc;
        }
        Ok(total)
    }

    /// Integrate `f` along the straight segment from `a` to `b` with
    /// composite 16-point Gauss-Legendre panels of length at most
    /// `spec.max_segment`, verified against one halving refinement.
    pub fn gauss_legendre_segment<F>(
        f: &F,
        a: Complex64,
        b: Complex64,
        spec: &QuadratureSpec,
    ) -> Result<Complex64>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let len = (b - a).norm();
        if len == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let segments = (len / spec.max_segment).ceil().max(1.0) as usize;
        let coarse = composite(f, a, b, segments)?;
        let fine = composite(f, a, b, 2 * segments)?;
        let discrepancy = (fine - coarse).norm();
        if discrepancy > spec.refine_tol {
            return Err(Error::QuadratureNotConverged { discrepancy });
        }
        Ok(fine)
    }
}

pub use quad::QuadratureSpec;

/// Extract the analytic square root `q` of a dilatation `omega` as a Taylor
/// series checked against `omega` on a sample circle. Fails with
/// [`Error::NotASquare`] when `omega` has an odd-order zero at the origin.
pub fn dilatation_sqrt(omega: &AnalyticExpr, order: usize) -> Result<AnalyticExpr> {
    let jet = omega.eval_jet(Complex64::new(0.0, 0.0), order)?;
    let coeffs = jet.coeffs();
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(AnalyticExpr::constant(Complex64::new(0.0, 0.0)));
    }
    let lead = coeffs
        .iter()
        .position(|c| c.norm() > 1e-12 * scale)
        .unwrap_or(0);
    if lead % 2 != 0 {
        return Err(Error::NotASquare);
    }
    // q = z^(lead/2) * sqrt(omega / z^lead) as an expression.
    let half = lead / 2;
    let shifted = if lead == 0 {
        omega.clone()
    } else {
        // Divide out the zero symbolically: omega / z^lead.
        AnalyticExpr::parse(&format!("({}) / z^{}", omega, lead))?
    };
    let sqrt_part = AnalyticExpr::parse(&format!("({})^0.5", shifted))?;
    if half == 0 {
        Ok(sqrt_part)
    } else {
        Ok(AnalyticExpr::parse(&format!("z^{} * ({})", half, sqrt_part))?)
    }
}

/// One lifted point of the minimal graph.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LiftedPoint {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    /// Gauss curvature of the surface at this point.
    pub curvature: f64,
}

fn g_prime(m: &HarmonicMapping, z: Complex64) -> Result<Complex64> {
    let (hj, qj) = m.jets(z)?;
    Ok(qj.value() * qj.value() * hj.coeffs()[1])
}

fn w_prime(m: &HarmonicMapping, z: Complex64) -> Result<Complex64> {
    let (hj, qj) = m.jets(z)?;
    Ok(qj.value() * hj.coeffs()[1])
}

/// Lift a single point: integrates from the origin along the straight
/// segment, normalised so that the lift of the origin is
/// `(Re h(0), Im h(0), 0)`.
pub fn lift_point(m: &HarmonicMapping, z: Complex64, quad: &QuadratureSpec) -> Result<LiftedPoint> {
    if z.norm() >= 1.0 {
        return Err(Error::PointOutsideDomain { z });
    }
    let origin = Complex64::new(0.0, 0.0);
    let g = quad::gauss_legendre_segment(&|zeta| g_prime(m, zeta), origin, z, quad)?;
    let wint = quad::gauss_legendre_segment(&|zeta| w_prime(m, zeta), origin, z, quad)?;
    let planar = m.h.eval(z)? + g.conj();
    let (hj, qj) = m.jets(z)?;
    Ok(LiftedPoint {
        u: planar.re,
        v: planar.im,
        w: 2.0 * wint.im,
        curvature: gauss_curvature_jets(&hj, &qj)?,
    })
}

/// Compare the straight-segment value of `W(z)` against the radial-then-arc
/// path. Returns the absolute discrepancy.
pub fn path_independence_check(
    m: &HarmonicMapping,
    z: Complex64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let origin = Complex64::new(0.0, 0.0);
    let straight = quad::gauss_legendre_segment(&|zeta| w_prime(m, zeta), origin, z, quad)?;

    // Radial leg to |z| on the positive real axis, then the circular arc.
    let r = z.norm();
    let radial = quad::gauss_legendre_segment(
        &|zeta| w_prime(m, zeta),
        origin,
        Complex64::new(r, 0.0),
        quad,
    )?;
    // Arc z(t) = r e^{i t}, dz = i r e^{i t} dt, t in [0, arg z].
    let theta = z.arg();
    let arc = if theta == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        quad::gauss_legendre_segment(
            &|t| {
                let zt = Complex64::from_polar(r, t.re);
                Ok(w_prime(m, zt)? * Complex64::new(0.0, r) * Complex64::from_polar(1.0, t.re))
            },
            Complex64::new(0.0, 0.0),
            Complex64::new(theta, 0.0),
            quad,
        )?
    };
    Ok(((radial + arc - straight) * 2.0).im.abs().max(
        // also compare the real parts; holomorphy makes both path-free
        ((radial + arc - straight) * 2.0).re.abs(),
    ))
}

/// Triangulated lift of a polar grid.
#[derive(Debug, Clone, Serialize)]
pub struct Mesh {
    pub vertices: Vec<LiftedPoint>,
    /// Zero-based vertex index triples, counter-clockwise seen from above.
    pub faces: Vec<[usize; 3]>,
}

/// Lift a full polar grid. Vertex 0 is the grid centre; ring `j`
/// (`1..=nr`) at angle index `k` maps to vertex `1 + (j-1)*ntheta + k`.
/// `W` accumulates incrementally along each ray so rays share no redundant
/// integration work.
pub fn build_mesh(m: &HarmonicMapping, grid: &GridSpec, quad: &QuadratureSpec) -> Result<Mesh> {
    let origin = Complex64::new(0.0, 0.0);
    let (hj0, qj0) = m.jets(origin)?;
    let h0 = m.h.eval(origin)?;
    let mut vertices = vec![LiftedPoint {
        u: h0.re,
        v: h0.im,
        w: 0.0,
        curvature: gauss_curvature_jets(&hj0, &qj0)?,
    }];

    let nr = grid.nr;
    let ntheta = grid.ntheta;
    // Mesh rings sit at r_max * j / nr, j = 1..=nr, so the centre vertex
    // plus nr full rings covers the disk of radius r_max.
    let ring_radius = |j: usize| grid.r_max * j as f64 / nr as f64;
    let mut rays: Vec<Vec<LiftedPoint>> = Vec::with_capacity(ntheta);
    for k in 0..ntheta {
        let dir = Complex64::from_polar(1.0, grid.angle(k));
        let mut w_acc = 0.0;
        let mut g_acc = Complex64::new(0.0, 0.0);
        let mut prev = origin;
        let mut ray = Vec::with_capacity(nr);
        for j in 1..=nr {
            let z = dir * ring_radius(j);
            w_acc += 2.0
                * quad::gauss_legendre_segment(&|zeta| w_prime(m, zeta), prev, z, quad)?.im;
            g_acc += quad::gauss_legendre_segment(&|zeta| g_prime(m, zeta), prev, z, quad)?;
            prev = z;
            let planar = m.h.eval(z)? + g_acc.conj();
            let (hj, qj) = m.jets(z)?;
            ray.push(LiftedPoint {
                u: planar.re,
                v: planar.im,
                w: w_acc,
                curvature: gauss_curvature_jets(&hj, &qj)?,
            });
        }
        rays.push(ray);
    }
    // Ring-major layout: all of ring 1 first, then ring 2, ...
    for j in 0..nr {
        for ray in &rays {
            vertices.push(ray[j]);
        }
    }

    let idx = |j: usize, k: usize| 1 + (j - 1) * ntheta + (k % ntheta);
    let mut faces = Vec::new();
    for k in 0..ntheta {
        faces.push([0, idx(1, k), idx(1, k + 1)]);
    }
    for j in 1..nr {
        for k in 0..ntheta {
            let a = idx(j, k);
            let b = idx(j, k + 1);
            let c = idx(j + 1, k + 1);
            let d = idx(j + 1, k);
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    Ok(Mesh { vertices, faces })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Result<MeshFormat> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("obj") => Ok(MeshFormat::Obj),
            Some("ply") => Ok(MeshFormat::Ply),
            other => Err(Error::Domain(format!(
                "unsupported mesh extension {:?}; want .obj or .ply",
                other
            ))),
        }
    }
}

/// Format a coordinate with nine decimals, trimming trailing zeros so exact
/// zeros print as `0`.
fn fmt_coord(x: f64) -> String {
    let s = format!("{:.9}", x);
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}

/// Serialise the mesh to OBJ or PLY text. PLY carries the Gauss curvature as
/// a per-vertex `quality` property. Output is deterministic.
pub fn mesh_to_string(mesh: &Mesh, format: MeshFormat) -> String {
    let mut out = String::new();
    match format {
        MeshFormat::Obj => {
            for p in &mesh.vertices {
                out.push_str(&format!(
                    "v {} {} {}\n",
                    fmt_coord(p.u),
                    fmt_coord(p.v),
                    fmt_coord(p.w)
                ));
            }
            for f in &mesh.faces {
                // OBJ indices are one-based.
                out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
            }
        }
        MeshFormat::Ply => {
            out.push_str("ply\nformat ascii 1.0\n");
            out.push_str(&format!("element vertex {}\n", mesh.vertices.len()));
            out.push_str("property float x\nproperty float y\nproperty float z\n");
            out.push_str("property float quality\n");
            out.push_str(&format!("element face {}\n", mesh.faces.len()));
            out.push_str("property list uchar int vertex_indices\n");
            out.push_str("end_header\n");
            for p in &mesh.vertices {
                out.push_str(&format!(
                    "{} {} {} {}\n",
                    fmt_coord(p.u),
                    fmt_coord(p.v),
                    fmt_coord(p.w),
                    fmt_coord(p.curvature)
                ));
            }
            for f in &mesh.faces {
                out.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
            }
        }
    }
    out
}

/// Write the mesh atomically: serialise to a temporary file in the target
/// directory, then rename into place.
pub fn export_mesh(mesh: &Mesh, path: &Path) -> Result<()> {
    let format = MeshFormat::from_path(path)?;
    let text = mesh_to_string(mesh, format);
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("mesh")
    ));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::AnalyticExpr;

    fn parse(s: &str) -> AnalyticExpr {
        AnalyticExpr::parse(s).unwrap()
    }

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadrature_exact_on_polynomials() {
        let spec = QuadratureSpec::default();
        // int_0^1 z^3 dz = 1/4 along a rotated segment.
        let b = Complex64::from_polar(0.8, 0.5);
        let val =
            quad::gauss_legendre_segment(&|z| Ok(z * z * z), c64(0.0, 0.0), b, &spec).unwrap();
        let expect = b.powu(4) / 4.0;
        assert!((val - expect).norm() < 1e-14);
    }

    #[test]
    fn quadrature_matches_exp() {
        let spec = QuadratureSpec::default();
        let b = c64(0.3, 0.7);
        let val = quad::gauss_legendre_segment(&|z| Ok(z.exp()), c64(0.0, 0.0), b, &spec).unwrap();
        assert!((val - (b.exp() - 1.0)).norm() < 1e-13);
    }

    #[test]
    fn lift_of_identity_is_flat() {
        // q = 0: the lift is the graph W = 0 over h.
        let m = HarmonicMapping::analytic(parse("z"));
        let p = lift_point(&m, c64(0.5, 0.25), &QuadratureSpec::default()).unwrap();
        assert!((p.u - 0.5).abs() < 1e-13);
        assert!((p.v - 0.25).abs() < 1e-13);
        assert_eq!(p.w, 0.0);
        assert_eq!(p.curvature, 0.0);
    }

    #[test]
    fn lift_height_closed_form() {
        // h = z, q = z: W(z) = 2 Im (z^2/2) = Im z^2.
        let m = HarmonicMapping::new(parse("z"), parse("z"));
        let z = c64(0.4, 0.3);
        let p = lift_point(&m, z, &QuadratureSpec::default()).unwrap();
        assert!((p.w - (z * z).im).abs() < 1e-12);
        // g = int z^2 dz = z^3/3, planar part h + conj(g).
        let planar = z + (z * z * z / 3.0).conj();
        assert!((p.u - planar.re).abs() < 1e-12);
        assert!((p.v - planar.im).abs() < 1e-12);
    }

    #[test]
    fn path_independence() {
        let m = HarmonicMapping::new(parse("z/(1-z)"), parse("0.6*z"));
        for z in [c64(0.5, 0.4), c64(-0.3, 0.6), c64(0.1, -0.7)] {
            let d = path_independence_check(&m, z, &QuadratureSpec::default()).unwrap();
            assert!(d < 1e-7, "discrepancy {d:e} at {z}");
        }
    }

    #[test]
    fn outside_domain_rejected() {
        let m = HarmonicMapping::analytic(parse("z"));
        assert!(matches!(
            lift_point(&m, c64(1.2, 0.0), &QuadratureSpec::default()),
            Err(Error::PointOutsideDomain { .. })
        ));
    }

    #[test]
    fn sqrt_of_even_zero() {
        let q = dilatation_sqrt(&parse("z^2"), 8).unwrap();
        let z = c64(0.3, 0.2);
        let qv = q.eval(z).unwrap();
        assert!((qv * qv - z * z).norm() < 1e-12);
    }

    #[test]
    fn sqrt_of_odd_zero_fails() {
        assert!(matches!(dilatation_sqrt(&parse("z"), 8), Err(Error::NotASquare)));
        assert!(matches!(
            dilatation_sqrt(&parse("z^3/(1-z)"), 12),
            Err(Error::NotASquare)
        ));
    }

    #[test]
    fn sqrt_of_unit() {
        let q = dilatation_sqrt(&parse("(0.25)*(1-z)^2"), 8).unwrap();
        let z = c64(0.1, -0.4);
        let qv = q.eval(z).unwrap();
        let om = 0.25 * (c64(1.0, 0.0) - z) * (c64(1.0, 0.0) - z);
        assert!((qv * qv - om).norm() < 1e-12);
    }

    #[test]
    fn mesh_counts_and_layout() {
        let m = HarmonicMapping::analytic(parse("z"));
        let grid = GridSpec::new(4, 8, 0.8).unwrap();
        let mesh = build_mesh(&m, &grid, &QuadratureSpec::default()).unwrap();
        assert_eq!(mesh.vertices.len(), 4 * 8 + 1);
        assert_eq!(mesh.faces.len(), 8 + 2 * 8 * 3);
        // Centre vertex at the origin, ring-major ordering after it.
        assert_eq!(mesh.vertices[0].u, 0.0);
        let v = mesh.vertices[1 + 8 + 2]; // ring 2, angle index 2
        let z = Complex64::from_polar(grid.r_max * 2.0 / 4.0, grid.angle(2));
        assert!((v.u - z.re).abs() < 1e-13);
        assert!((v.v - z.im).abs() < 1e-13);
        // All face indices valid.
        for f in &mesh.faces {
            for &i in f {
                assert!(i < mesh.vertices.len());
            }
        }
    }

    #[test]
    fn obj_export_format() {
        let m = HarmonicMapping::analytic(parse("z"));
        let grid = GridSpec::new(2, 4, 0.5).unwrap();
        let mesh = build_mesh(&m, &grid, &QuadratureSpec::default()).unwrap();
        let text = mesh_to_string(&mesh, MeshFormat::Obj);
        let first = text.lines().next().unwrap();
        assert_eq!(first, "v 0 0 0");
        assert!(text.lines().filter(|l| l.starts_with("v ")).count() == 9);
        assert!(text.lines().filter(|l| l.starts_with("f ")).count() == 12);
        // Determinism.
        assert_eq!(text, mesh_to_string(&mesh, MeshFormat::Obj));
    }

    #[test]
    fn ply_export_format() {
        let m = HarmonicMapping::new(parse("z"), parse("0.5*z"));
        let grid = GridSpec::new(2, 4, 0.5).unwrap();
        let mesh = build_mesh(&m, &grid, &QuadratureSpec::default()).unwrap();
        let text = mesh_to_string(&mesh, MeshFormat::Ply);
        assert!(text.starts_with("ply\nformat ascii 1.0\n"));
        assert!(text.contains("element vertex 9"));
        assert!(text.contains("property float quality"));
        assert!(text.contains("element face 12"));
        // Curvature of the centre vertex: K = -4|q'|^2 / (|h'|^2 (1+|q|^2)^4)
        // with h' = 1, q' = 0.5 => K = -1.
        let body = text.split("end_header\n").nth(1).unwrap();
        let first = body.lines().next().unwrap();
        assert_eq!(first, "0 0 0 -1");
    }

    #[test]
    fn atomic_export_roundtrip() {
        let m = HarmonicMapping::analytic(parse("z"));
        let grid = GridSpec::new(2, 4, 0.5).unwrap();
        let mesh = build_mesh(&m, &grid, &QuadratureSpec::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.obj");
        export_mesh(&mesh, &path).unwrap();
        let back = std::fs::read_to_string(&path).unwrap();
        assert_eq!(back, mesh_to_string(&mesh, MeshFormat::Obj));
        assert!(!dir.path().join(".out.obj.tmp").exists());
        assert!(matches!(
            export_mesh(&mesh, &dir.path().join("out.stl")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fmt_coord_trimming() {
        assert_eq!(fmt_coord(0.0), "0");
        assert_eq!(fmt_coord(-0.0), "0");
        assert_eq!(fmt_coord(1.5), "1.5");
        assert_eq!(fmt_coord(0.123456789123), "0.123456789");
        assert_eq!(fmt_coord(-2.0), "-2");
    }
}
