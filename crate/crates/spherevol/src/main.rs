//! Command-line front end: evaluate bounds, query the concavity domain,
//! generate example meshes, validate and report on mesh files, and run the
//! sampling verifiers and seeded optimizers.
//!
//! Exit codes: 0 on success, 1 when a verifier reports violations, 2 on
//! usage or domain errors (with a one-line diagnostic on stderr).
//!
//! All numeric JSON output is rounded to 15 significant digits and printed
//! in the shortest representation that round-trips; CSV uses `.` decimals
//! and `\n` line endings. Angles are read in radians unless `--deg` is
//! given; output is always radians.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use spherevol::bounds::{
    cap_term, equilateral_c_from_tau, icosahedron_bound, pgon_tau_bound, polyhedron_bound,
    two_tetra_assembly_bound, u_general, u_triangle, uniform_bound, v_arc_alpha, v_chord_alpha,
    v_m_alpha, v_pgon_m_alpha, v_tau_c, v_tau_chord,
};
use spherevol::domain::{classify, dv_dc, f_boundary, hessian_v, omega, quartic_roots, region_grid};
use spherevol::mesh::{generate, Shape, SphereMesh};
use spherevol::optimize::{
    constrained_sum_max, max_two_tetrahedra, max_volume_n_points, verify_cap_sum,
    verify_concavity, verify_dominance, verify_polygon_comparator, verify_tau_le_c,
    verify_triangle_comparator,
};
use spherevol::{Error, Result};

#[derive(Parser)]
#[command(
    name = "spherevol",
    version,
    about = "Volume bounds and extremal configurations for polyhedra inscribed in the unit sphere"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a closed-form bound formula
    Bound(BoundArgs),
    /// Query or grid the concavity domain of v(tau, c)
    Domain(DomainArgs),
    /// Generate an example mesh as JSON
    Mesh(MeshArgs),
    /// Validate a mesh file and report volume, bound and slack
    Report(ReportArgs),
    /// Run a sampling verifier suite (exit 1 on violations)
    Verify(VerifyArgs),
    /// Run a seeded optimizer
    Optimize(OptimizeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    UGeneral,
    UTriangle,
    Polyhedron,
    Icosahedron,
    VTauC,
    VMAlpha,
    VChordAlpha,
    VArcAlpha,
    VTauChord,
    Uniform,
    Pgon,
    PgonTau,
    CapTerm,
    Assembly,
    EquilateralC,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct BoundArgs {
    /// Formula to evaluate
    formula: Formula,
    /// Spherical face area
    #[arg(long)]
    tau: Option<f64>,
    /// Maximal spherical arc of the face
    #[arg(long)]
    c: Option<f64>,
    /// Distance from the sphere center to the face plane
    #[arg(long)]
    m: Option<f64>,
    /// Common-form angle
    #[arg(long)]
    alpha: Option<f64>,
    /// Chord length
    #[arg(long)]
    chord: Option<f64>,
    /// Spherical arc
    #[arg(long)]
    arc: Option<f64>,
    /// Polygon order (integer for p-gon formulas, real >= 3 for u-general)
    #[arg(long)]
    p: Option<f64>,
    /// Face count
    #[arg(long)]
    f: Option<u32>,
    /// Vertex count
    #[arg(long)]
    v: Option<u32>,
    /// Edge count
    #[arg(long)]
    e: Option<u32>,
    /// Vertex count for the n-point bound
    #[arg(long)]
    n: Option<u32>,
    /// Sphere radius for the combinatorial bounds
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Five areas for the assembly bound, comma-separated
    #[arg(long, value_delimiter = ',')]
    taus: Option<Vec<f64>>,
    /// Interpret angle-valued inputs as degrees
    #[arg(long)]
    deg: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
#[command(group = ArgGroup::new("mode").required(true).args(["query", "grid", "omega", "f_boundary", "quartic"]))]
struct DomainArgs {
    /// Classify a single (tau, c) point
    #[arg(long, num_args = 2, value_names = ["TAU", "C"])]
    query: Option<Vec<f64>>,
    /// Emit a CSV sign grid at this resolution (>= 16)
    #[arg(long)]
    grid: Option<u32>,
    /// Print the area threshold where the Hessian-zero curve reaches the cap
    #[arg(long)]
    omega: bool,
    /// Evaluate the Hessian-zero curve c = f(tau)
    #[arg(long, value_name = "TAU")]
    f_boundary: Option<f64>,
    /// Print the quartic roots behind the curve's closed form
    #[arg(long)]
    quartic: bool,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Interpret angle-valued inputs as degrees
    #[arg(long)]
    deg: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Tetrahedron,
    Octahedron,
    Icosahedron,
    Cube,
    Bipyramid,
    RhombicStarP,
    HullQ,
    TwoTetrahedra,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct MeshArgs {
    /// Shape to generate
    shape: ShapeArg,
    /// Equator size for the bipyramid (>= 3)
    #[arg(long)]
    n: Option<u32>,
    /// Rotation axis for two-tetrahedra, comma-separated x,y,z
    #[arg(long, value_delimiter = ',', value_name = "X,Y,Z")]
    axis: Option<Vec<f64>>,
    /// Rotation angle for two-tetrahedra
    #[arg(long)]
    angle: Option<f64>,
    /// Write the mesh to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Interpret angle-valued inputs as degrees
    #[arg(long)]
    deg: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Mesh JSON file, or '-' for stdin
    file: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    TriangleComparator,
    Dominance,
    PentagonComparator,
    TauLeC,
    Concavity,
    CapSum,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// Suite to run
    suite: SuiteArg,
    /// Number of samples
    #[arg(long)]
    samples: u64,
    /// RNG seed (runs are deterministic given the seed)
    #[arg(long)]
    seed: u64,
    /// Also fail (exit 1) when worst_slack exceeds this threshold,
    /// e.g. as a regression gate demanding a safety margin
    #[arg(long, value_name = "SLACK", allow_hyphen_values = true)]
    fail_above: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    NPoints,
    TwoTetrahedra,
    ConstrainedSum,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Problem to optimize
    problem: ProblemArg,
    /// Vertex count for n-points (4..=30)
    #[arg(long)]
    n: Option<u32>,
    /// RNG seed (runs are deterministic given the seed)
    #[arg(long)]
    seed: u64,
    /// Independent restarts
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    /// Worker threads; 1 is the bit-exact serial baseline (parallel runs
    /// produce identical output)
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Bound(args) => {
            let v = cmd_bound(args)?;
            println!("{}", round_json(v));
            Ok(0)
        }
        Cmd::Domain(args) => cmd_domain(args).map(|_| 0),
        Cmd::Mesh(args) => cmd_mesh(args).map(|_| 0),
        Cmd::Report(args) => {
            let report = cmd_report(args)?;
            println!("{}", round_json(report));
            Ok(0)
        }
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Optimize(args) => {
            let v = cmd_optimize(args)?;
            println!("{}", round_json(v));
            Ok(0)
        }
    }
}

/// Round to 15 significant digits; the JSON layer then prints the shortest
/// representation that round-trips to the rounded value.
fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(r) = n.as_f64().and_then(|f| serde_json::Number::from_f64(round15(f))) {
                    return Value::Number(r);
                }
            }
            Value::Number(n)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn req<T: Copy>(o: Option<T>, name: &str) -> Result<T> {
    o.ok_or_else(|| Error::Domain(format!("missing required flag --{name}")))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_bound(args: BoundArgs) -> Result<Value> {
    let rad = |x: f64| if args.deg { x.to_radians() } else { x };
    let name = match args.formula {
        Formula::UGeneral => "u-general",
        Formula::UTriangle => "u-triangle",
        Formula::Polyhedron => "polyhedron",
        Formula::Icosahedron => "icosahedron",
        Formula::VTauC => "v-tau-c",
        Formula::VMAlpha => "v-m-alpha",
        Formula::VChordAlpha => "v-chord-alpha",
        Formula::VArcAlpha => "v-arc-alpha",
        Formula::VTauChord => "v-tau-chord",
        Formula::Uniform => "uniform",
        Formula::Pgon => "pgon",
        Formula::PgonTau => "pgon-tau",
        Formula::CapTerm => "cap-term",
        Formula::Assembly => "assembly",
        Formula::EquilateralC => "equilateral-c",
    };
    let int_order = |p: f64| -> Result<u32> {
        if p.fract() != 0.0 || !(3.0..=64.0).contains(&p) {
            return Err(Error::Domain(format!(
                "polygon order --p must be an integer in 3..=64, got {p}"
            )));
        }
        Ok(p as u32)
    };
    let (value, inputs) = match args.formula {
        Formula::UGeneral => {
            let tau = rad(req(args.tau, "tau")?);
            let p = req(args.p, "p")?;
            (u_general(tau, p)?, json!({"tau": tau, "p": p}))
        }
        Formula::UTriangle => {
            let tau = rad(req(args.tau, "tau")?);
            (u_triangle(tau)?, json!({"tau": tau}))
        }
        Formula::Polyhedron => {
            let (f, v, e) = (req(args.f, "f")?, req(args.v, "v")?, req(args.e, "e")?);
            (
                polyhedron_bound(f, v, e, args.radius)?,
                json!({"f": f, "v": v, "e": e, "radius": args.radius}),
            )
        }
        Formula::Icosahedron => {
            let n = req(args.n, "n")?;
            (
                icosahedron_bound(n, args.radius)?,
                json!({"n": n, "radius": args.radius}),
            )
        }
        Formula::VTauC => {
            let tau = rad(req(args.tau, "tau")?);
            let c = rad(req(args.c, "c")?);
            (v_tau_c(tau, c)?, json!({"tau": tau, "c": c}))
        }
        Formula::VMAlpha => {
            let m = req(args.m, "m")?;
            let alpha = rad(req(args.alpha, "alpha")?);
            (v_m_alpha(m, alpha)?, json!({"m": m, "alpha": alpha}))
        }
        Formula::VChordAlpha => {
            let chord = req(args.chord, "chord")?;
            let alpha = rad(req(args.alpha, "alpha")?);
            (
                v_chord_alpha(chord, alpha)?,
                json!({"chord": chord, "alpha": alpha}),
            )
        }
        Formula::VArcAlpha => {
            let arc = rad(req(args.arc, "arc")?);
            let alpha = rad(req(args.alpha, "alpha")?);
            (v_arc_alpha(arc, alpha)?, json!({"arc": arc, "alpha": alpha}))
        }
        Formula::VTauChord => {
            let tau = rad(req(args.tau, "tau")?);
            let chord = req(args.chord, "chord")?;
            let alpha = rad(req(args.alpha, "alpha")?);
            (
                v_tau_chord(tau, chord, alpha)?,
                json!({"tau": tau, "chord": chord, "alpha": alpha}),
            )
        }
        Formula::Uniform => {
            let f = req(args.f, "f")?;
            let c = rad(req(args.c, "c")?);
            (uniform_bound(f, c)?, json!({"f": f, "c": c}))
        }
        Formula::Pgon => {
            let m = req(args.m, "m")?;
            let alpha = rad(req(args.alpha, "alpha")?);
            let p = int_order(req(args.p, "p")?)?;
            (
                v_pgon_m_alpha(m, alpha, p)?,
                json!({"m": m, "alpha": alpha, "p": p}),
            )
        }
        Formula::PgonTau => {
            let tau = rad(req(args.tau, "tau")?);
            let alpha = rad(req(args.alpha, "alpha")?);
            let p = int_order(req(args.p, "p")?)?;
            (
                pgon_tau_bound(tau, alpha, p)?,
                json!({"tau": tau, "alpha": alpha, "p": p}),
            )
        }
        Formula::CapTerm => {
            let tau = rad(req(args.tau, "tau")?);
            (cap_term(tau)?, json!({"tau": tau}))
        }
        Formula::Assembly => {
            let taus: Vec<f64> = req(args.taus.as_deref(), "taus")?
                .iter()
                .map(|&t| rad(t))
                .collect();
            (two_tetra_assembly_bound(&taus)?, json!({"taus": taus}))
        }
        Formula::EquilateralC => {
            let tau = rad(req(args.tau, "tau")?);
            (equilateral_c_from_tau(tau)?, json!({"tau": tau}))
        }
    };
    Ok(json!({"formula": name, "inputs": inputs, "value": value}))
}

fn cmd_domain(args: DomainArgs) -> Result<()> {
    let rad = |x: f64| if args.deg { x.to_radians() } else { x };
    if let Some(q) = &args.query {
        let (tau, c) = (rad(q[0]), rad(q[1]));
        if !(tau > 0.0 && tau < 2.0 * std::f64::consts::PI) || !(c > 0.0 && c < std::f64::consts::PI)
        {
            return Err(Error::Domain(format!(
                "query ({tau}, {c}) outside (0, 2pi) x (0, pi)"
            )));
        }
        let mut o = Map::new();
        o.insert("tau".into(), json!(tau));
        o.insert("c".into(), json!(c));
        o.insert("class".into(), json!(classify(tau, c)));
        let f_tau = if tau < std::f64::consts::FRAC_PI_2 {
            f_boundary(tau).ok()
        } else {
            None
        };
        o.insert("f_tau".into(), json!(f_tau));
        o.insert("omega".into(), json!(omega()));
        o.insert("v".into(), json!(v_tau_c(tau, c).ok()));
        o.insert("det".into(), json!(hessian_v(tau, c).ok().map(|h| h.det)));
        o.insert("dvdc".into(), json!(dv_dc(tau, c).ok()));
        let line = format!("{}\n", round_json(Value::Object(o)));
        return emit(&args.out, &line);
    }
    if let Some(res) = args.grid {
        let cells = region_grid(res)?;
        let mut s = String::from("tau,c,v,det_sign,dvdc_sign\n");
        for cell in cells {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                round15(cell.tau),
                round15(cell.c),
                round15(cell.v),
                cell.det_sign,
                cell.dvdc_sign
            ));
        }
        return emit(&args.out, &s);
    }
    if args.omega {
        let line = format!("{}\n", round_json(json!({"omega": omega()})));
        return emit(&args.out, &line);
    }
    if let Some(tau) = args.f_boundary {
        let tau = rad(tau);
        let f = f_boundary(tau)?;
        let line = format!("{}\n", round_json(json!({"tau": tau, "f": f})));
        return emit(&args.out, &line);
    }
    // --quartic (the argument group guarantees one mode is set)
    let r = quartic_roots();
    let line = format!(
        "{}\n",
        round_json(json!({
            "roots": r,
            "pair_products": [r[0] * r[3], r[1] * r[2]],
        }))
    );
    emit(&args.out, &line)
}

fn cmd_mesh(args: MeshArgs) -> Result<()> {
    let rad = |x: f64| if args.deg { x.to_radians() } else { x };
    let shape = match args.shape {
        ShapeArg::Tetrahedron => Shape::Tetrahedron,
        ShapeArg::Octahedron => Shape::Octahedron,
        ShapeArg::Icosahedron => Shape::Icosahedron,
        ShapeArg::Cube => Shape::Cube,
        ShapeArg::Bipyramid => Shape::Bipyramid(req(args.n, "n")?),
        ShapeArg::RhombicStarP => Shape::RhombicStarP,
        ShapeArg::HullQ => Shape::HullQ,
        ShapeArg::TwoTetrahedra => {
            let axis = req(args.axis.as_deref(), "axis")?;
            if axis.len() != 3 {
                return Err(Error::Domain(format!(
                    "--axis needs exactly 3 components, got {}",
                    axis.len()
                )));
            }
            Shape::TwoTetrahedra {
                axis: [axis[0], axis[1], axis[2]],
                angle: rad(req(args.angle, "angle")?),
            }
        }
    };
    let mesh = generate(&shape)?;
    let line = format!("{}\n", round_json(serde_json::to_value(&mesh)?));
    emit(&args.out, &line)
}

fn cmd_report(args: ReportArgs) -> Result<Value> {
    let data = if args.file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&args.file)?
    };
    let mesh = SphereMesh::from_json(&data)?;
    let report = mesh.bound_report()?;
    Ok(serde_json::to_value(&report)?)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let report = match args.suite {
        SuiteArg::TriangleComparator => verify_triangle_comparator(args.samples, args.seed)?,
        SuiteArg::Dominance => verify_dominance(args.samples, args.seed)?,
        SuiteArg::PentagonComparator => verify_polygon_comparator(args.samples, args.seed, 5)?,
        SuiteArg::TauLeC => verify_tau_le_c(args.samples, args.seed)?,
        SuiteArg::Concavity => verify_concavity(args.samples, args.seed)?,
        SuiteArg::CapSum => verify_cap_sum(args.samples, args.seed)?,
    };
    println!("{}", round_json(serde_json::to_value(&report)?));
    let gate_failed = args.fail_above.is_some_and(|t| report.worst_slack > t);
    Ok(if report.violations > 0 || gate_failed { 1 } else { 0 })
}

fn cmd_optimize(args: OptimizeArgs) -> Result<Value> {
    let v = match args.problem {
        ProblemArg::NPoints => {
            let n = req(args.n, "n")?;
            serde_json::to_value(max_volume_n_points(n, args.seed, args.restarts, args.threads)?)?
        }
        ProblemArg::TwoTetrahedra => {
            serde_json::to_value(max_two_tetrahedra(args.seed, args.restarts, args.threads)?)?
        }
        ProblemArg::ConstrainedSum => serde_json::to_value(constrained_sum_max(args.seed))?,
    };
    Ok(v)
}
