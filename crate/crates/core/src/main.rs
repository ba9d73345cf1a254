use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use schwarzlift::chordarc::{estimate, PolygonDomain};
use schwarzlift::criteria::{self, NehariFunction};
use schwarzlift::error::Error;
use schwarzlift::expr::AnalyticExpr;
use schwarzlift::grid::GridSpec;
use schwarzlift::lift::{build_mesh, export_mesh, mesh_to_string, MeshFormat, QuadratureSpec};
use schwarzlift::schwarzian::{self, HarmonicMapping};
use schwarzlift::shear::{shear, ShearSpec};
use schwarzlift::verify;
use std::path::PathBuf;
use std::process::ExitCode;

/// Schwarzian derivatives of harmonic mappings and their minimal-surface
/// lifts: criterion checks, shears, chord-arc estimates, mesh export.
#[derive(Parser)]
#[command(name = "schwarzlift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the criterion quantity Phi_f at a point or its sup on a grid.
    Phi(PhiArgs),
    /// Check Phi_f <= 2p against a Nehari weight on a grid.
    Criterion(CriterionArgs),
    /// Print the threshold functions at (s, t).
    Thresholds(ThresholdArgs),
    /// Construct the shear of phi with a prescribed dilatation.
    Shear(ShearArgs),
    /// Lift a harmonic mapping to a minimal-surface mesh (OBJ/PLY).
    Lift(LiftArgs),
    /// Estimate the chord-arc constant of a polygonal domain.
    Chordarc(ChordarcArgs),
    /// Run every published-value verification check.
    PaperVerify,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got '{s}'"))?;
    Ok(Complex64::new(
        re.trim().parse().map_err(|e| format!("bad RE: {e}"))?,
        im.trim().parse().map_err(|e| format!("bad IM: {e}"))?,
    ))
}

fn parse_grid_shape(s: &str) -> Result<(usize, usize), String> {
    let (nr, nt) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NRxNT, got '{s}'"))?;
    Ok((
        nr.trim().parse().map_err(|e| format!("bad NR: {e}"))?,
        nt.trim().parse().map_err(|e| format!("bad NT: {e}"))?,
    ))
}

#[derive(Args)]
struct GridArgs {
    /// Polar grid shape NRxNT.
    #[arg(long = "grid", value_parser = parse_grid_shape)]
    grid: Option<(usize, usize)>,
    /// Outer sampling radius.
    #[arg(long = "rmax")]
    rmax: Option<f64>,
}

impl GridArgs {
    fn build(&self) -> Result<GridSpec, Error> {
        let d = GridSpec::DEFAULT;
        let (nr, nt) = self.grid.unwrap_or((d.nr, d.ntheta));
        GridSpec::new(nr, nt, self.rmax.unwrap_or(d.r_max))
    }
    fn explicit(&self) -> bool {
        self.grid.is_some() || self.rmax.is_some()
    }
}

#[derive(Args)]
struct PhiArgs {
    #[arg(long = "h")]
    h: String,
    #[arg(long = "q")]
    q: String,
    /// Single evaluation point RE,IM; omit for a grid scan.
    #[arg(long = "z", value_parser = parse_complex)]
    z: Option<Complex64>,
    /// Pass/fail threshold t for the grid scan.
    #[arg(long = "t")]
    t: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct CriterionArgs {
    #[arg(long = "h")]
    h: String,
    #[arg(long = "q")]
    q: String,
    /// Nehari weight: quad, hyper, const, or an expression.
    #[arg(long = "p")]
    p: String,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long = "s")]
    s: f64,
    #[arg(long = "t")]
    t: f64,
    /// Dilatation radius R for rho(s,t,R).
    #[arg(long = "R")]
    r_cap: Option<f64>,
}

#[derive(Args)]
struct ShearArgs {
    #[arg(long = "phi")]
    phi: String,
    #[arg(long = "omega")]
    omega: String,
    /// Shear direction RE,IM (unit modulus), default 1,0.
    #[arg(long = "lambda", value_parser = parse_complex)]
    lambda: Option<Complex64>,
    /// Series truncation order.
    #[arg(long = "order", default_value_t = schwarzlift::shear::DEFAULT_SHEAR_ORDER)]
    order: usize,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long = "h")]
    h: String,
    #[arg(long = "q")]
    q: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Mesh format; inferred from --out extension when omitted.
    #[arg(long = "format")]
    format: Option<String>,
    #[arg(long = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct ChordarcArgs {
    /// JSON file containing the polygon as [[x,y], ...].
    #[arg(long = "polygon")]
    polygon: PathBuf,
    /// Optional direction RE,IM for the directional constant.
    #[arg(long = "lambda", value_parser = parse_complex)]
    lambda: Option<Complex64>,
    #[arg(long = "samples", default_value_t = 500)]
    samples: usize,
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
}

/// Exit codes: 0 success, 1 criterion/verification failure,
/// 2 usage/parse error, 3 numerical error.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::Domain(_) | Error::NonConstantExponent => 2,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Phi(a) => {
            let m = HarmonicMapping::new(AnalyticExpr::parse(&a.h)?, AnalyticExpr::parse(&a.q)?);
            match a.z {
                Some(z) => {
                    let rep = schwarzian::phi_quantity(&m, z)?;
                    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
                    Ok(0)
                }
                None => {
                    let grid = a.grid.build()?;
                    let (teff, witness) = criteria::effective_t(&m, &grid)?;
                    let pass = a.t.map(|t| teff <= t + 1e-6);
                    println!(
                        "{}",
                        serde_json::json!({
                            "effective_t": teff,
                            "witness": [witness.re, witness.im],
                            "grid": grid,
                            "pass": pass,
                        })
                    );
                    Ok(if pass == Some(false) { 1 } else { 0 })
                }
            }
        }
        Command::Criterion(a) => {
            let m = HarmonicMapping::new(AnalyticExpr::parse(&a.h)?, AnalyticExpr::parse(&a.q)?);
            let p = NehariFunction::parse_spec(&a.p)?;
            let grid = a.grid.build()?;
            let rep = criteria::check_lift_criterion(&m, &p, &grid)?;
            println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            Ok(if rep.pass { 0 } else { 1 })
        }
        Command::Thresholds(a) => {
            let (s, t) = (a.s, a.t);
            let mut out = serde_json::json!({
                "r0": criteria::r0(s, t)?,
                "eta": criteria::eta(s, t)?,
                "c": criteria::c_fn(s, t)?,
                "c_star": criteria::c_star(s, t)?,
                "psi_qc": criteria::psi_qc(t)?,
                "t_hat": criteria::t_hat(s)?,
            });
            if let Some(r_cap) = a.r_cap {
                out["rho"] = serde_json::json!(criteria::rho(s, t, r_cap)?);
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(0)
        }
        Command::Shear(a) => {
            let mut spec = ShearSpec::new(
                AnalyticExpr::parse(&a.phi)?,
                AnalyticExpr::parse(&a.omega)?,
            )
            .with_order(a.order);
            if let Some(l) = a.lambda {
                spec = spec.with_lambda(l)?;
            }
            let res = shear(&spec)?;
            println!("{}", serde_json::to_string_pretty(&res.to_json()).unwrap());
            Ok(0)
        }
        Command::Lift(a) => {
            let m = HarmonicMapping::new(AnalyticExpr::parse(&a.h)?, AnalyticExpr::parse(&a.q)?);
            let grid = if a.grid.explicit() {
                a.grid.build()?
            } else {
                GridSpec::new(40, 72, 0.95)?
            };
            let mesh = build_mesh(&m, &grid, &QuadratureSpec::default())?;
            match a.format.as_deref() {
                None => export_mesh(&mesh, &a.out)?,
                Some(fmt) => {
                    let format = match fmt {
                        "obj" => MeshFormat::Obj,
                        "ply" => MeshFormat::Ply,
                        other => {
                            return Err(Error::Domain(format!(
                                "unknown format '{other}'; want obj or ply"
                            )))
                        }
                    };
                    atomic_write(&a.out, mesh_to_string(&mesh, format).as_bytes())?;
                }
            }
            eprintln!(
                "wrote {} vertices, {} faces to {}",
                mesh.vertices.len(),
                mesh.faces.len(),
                a.out.display()
            );
            Ok(0)
        }
        Command::Chordarc(a) => {
            let text = std::fs::read_to_string(&a.polygon)?;
            let domain = PolygonDomain::from_json(&text)?;
            let rep = estimate(&domain, a.lambda, a.samples, a.seed)?;
            println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            Ok(0)
        }
        Command::PaperVerify => {
            let results = verify::run_all();
            let mut failures = 0;
            for r in &results {
                println!(
                    "{} {:2}  {}\n      {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.id,
                    r.name,
                    r.detail
                );
                if !r.passed {
                    failures += 1;
                }
            }
            println!("{} of {} checks passed", results.len() - failures, results.len());
            Ok(if failures > 0 { 1 } else { 0 })
        }
    }
}

fn atomic_write(path: &std::path::Path, bytes: &[u8]) -> Result<(), Error> {
    let dir = path.parent().unwrap_or_else(|| std::path::Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("out")
    ));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SCHWARZLIFT_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("SCHWARZLIFT_THREADS must be a positive integer, got '{threads}'");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
