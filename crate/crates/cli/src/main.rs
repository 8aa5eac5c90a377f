use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use planar_tangent::acceptance::{run_acceptance, DEFAULT_SEED};
use planar_tangent::fixtures::geometric_radii;
use planar_tangent::porosity::beta_ladder;
use planar_tangent::report::{fmt_f64, Table};
use planar_tangent::set_model::{parse_line_spec, serialize_set_spec};
use planar_tangent::{
    cone_convergence_report, con_a, conv_a, dichotomy_probe, make_fixture, parse_set_spec, porosity_estimate,
    sequence_cluster_directions, strong_equiv_probe, ConeDescriptor64, Error, FixtureParams, MarkedSet64, Ray64,
    ScaleLadder64,
};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SPEC: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "planar-tangent", version, about = "Tangent cones, blow-ups and porosity of planar sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smallest closed cone at the marked point.
    Cone(SetArgs),
    /// Smallest closed convex cone at the marked point.
    Conv(SetArgs),
    /// Hausdorff distance between blow-ups and the cone.
    Blowup(SetArgs),
    /// Sphere-defect probe between two sets; `Y` defaults to the cone of `Z`.
    Equiv(EquivArgs),
    /// Right-side porosity of a one-dimensional set.
    Porosity(SetArgs),
    /// Porosity of sector radii as the sector narrows.
    Dichotomy(SetArgs),
    /// Limits of the odd and even subsequences of a two-direction sequence.
    Cluster(ClusterArgs),
    /// Runs the acceptance suite.
    Verify(VerifyArgs),
    /// Writes a catalog fixture as a set-spec document.
    Export(SetArgs),
}

#[derive(Args, Debug, Clone)]
struct LadderArgs {
    /// Coarsest scale.
    #[arg(long, default_value_t = 1.0)]
    t0: f64,
    /// Ladder ratio in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Number of scales (at least 4).
    #[arg(long, default_value_t = 12)]
    depth: usize,
}

#[derive(Args, Debug, Clone)]
struct SetArgs {
    /// Set-spec JSON file.
    #[arg(long, conflicts_with = "fixture")]
    spec: Option<PathBuf>,
    /// Catalog fixture name.
    #[arg(long)]
    fixture: Option<String>,
    #[command(flatten)]
    ladder: LadderArgs,
    /// Sample count per sphere or blow-up (at least 64).
    #[arg(long)]
    samples: Option<usize>,
    /// Truncation radius of blow-ups.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Number of β values `2^-1, …, 2^-depth`.
    #[arg(long, default_value_t = 10)]
    beta_depth: usize,
    /// Direction of the dichotomy ray in radians.
    #[arg(long, default_value_t = 0.0)]
    ray: f64,
    /// Seed of the random convex polygon fixture.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EquivArgs {
    /// Set-spec file for `Z`.
    z: Option<PathBuf>,
    /// Set-spec file for `Y`.
    y: Option<PathBuf>,
    #[command(flatten)]
    set: SetArgs,
}

#[derive(Args, Debug)]
struct ClusterArgs {
    #[arg(long, default_value_t = 0.3)]
    theta_odd: f64,
    #[arg(long, default_value_t = 0.9)]
    theta_even: f64,
    #[command(flatten)]
    ladder: LadderArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Directory receiving the CSV artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Spec(String),
    Verify,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema(_) | Error::Invariant(_) | Error::UnsupportedVariant(_) => Failure::Spec(e.to_string()),
            Error::UnknownFixture(_) | Error::InvalidLadder(_) | Error::ShallowLadder { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Spec(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_SPEC)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Cone(a) => describe_cone(&a, false),
        Command::Conv(a) => describe_cone(&a, true),
        Command::Blowup(a) => {
            let m = load_set(&a)?;
            let report = cone_convergence_report(&m.set, m.marked, &ladder(&a.ladder)?, a.radius, samples(&a, 4096)?)?;
            emit(a.out.as_deref(), &report.to_csv(), &format!("verdict {}", report.verdict))
        }
        Command::Equiv(e) => equiv(e),
        Command::Porosity(a) => porosity(&a),
        Command::Dichotomy(a) => {
            let m = load_set(&a)?;
            if a.beta_depth < 3 {
                return Err(Failure::Usage("--beta-depth must be at least 3".into()));
            }
            let v = dichotomy_probe(
                &m.set,
                m.marked,
                &Ray64::new(m.marked, a.ray),
                &beta_ladder(a.beta_depth),
                &ladder(&a.ladder)?,
            )?;
            emit(a.out.as_deref(), &v.to_csv(), &v.classification.to_string())
        }
        Command::Cluster(c) => {
            let report = sequence_cluster_directions(c.theta_odd, c.theta_even, &ladder(&c.ladder)?)?;
            let summary = format!(
                "{} clusters, separation {}",
                report.clusters.len(),
                fmt_f64(report.separation)
            );
            emit(c.out.as_deref(), &report.to_csv(), &summary)
        }
        Command::Verify(v) => verify(&v),
        Command::Export(a) => {
            let m = load_set(&a)?;
            write_or_print(a.out.as_deref(), &(serialize_set_spec(&m) + "\n"))
        }
    }
}

fn ladder(a: &LadderArgs) -> std::result::Result<ScaleLadder64, Failure> {
    if !(a.q > 0.0 && a.q < 1.0) {
        return Err(Failure::Usage(format!("--q must lie in (0, 1), got {}", a.q)));
    }
    if a.depth < 4 {
        return Err(Failure::Usage(format!("--depth must be at least 4, got {}", a.depth)));
    }
    Ok(ScaleLadder64::new(a.t0, a.q, a.depth)?)
}

fn samples(a: &SetArgs, default: usize) -> std::result::Result<usize, Failure> {
    let n = a.samples.unwrap_or(default);
    if n < 64 {
        return Err(Failure::Usage(format!("--samples must be at least 64, got {n}")));
    }
    Ok(n)
}

fn fixture_params(a: &SetArgs) -> FixtureParams {
    let mut params = FixtureParams::default();
    if let Some(seed) = a.seed {
        params.seed = seed;
    }
    params
}

fn load_spec(path: &Path) -> std::result::Result<MarkedSet64, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))?;
    parse_set_spec(&text).map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))
}

fn load_set(a: &SetArgs) -> std::result::Result<MarkedSet64, Failure> {
    match (&a.spec, &a.fixture) {
        (Some(path), _) => load_spec(path),
        (None, Some(name)) => {
            let f = make_fixture(name, &fixture_params(a))?;
            Ok(MarkedSet64::new(f.set, f.marked)?)
        }
        (None, None) => Err(Failure::Usage("one of --spec or --fixture is required".into())),
    }
}

fn arcs_text(c: &ConeDescriptor64) -> String {
    if c.arcs.is_full() {
        return format!("[0, {}]", fmt_f64(std::f64::consts::TAU));
    }
    let parts: Vec<String> = c
        .arcs
        .circular_arcs()
        .iter()
        .map(|&(s, e)| format!("[{}, {}]", fmt_f64(s), fmt_f64(e)))
        .collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}

fn describe_cone(a: &SetArgs, convex: bool) -> Outcome {
    let m = load_set(a)?;
    let c = if convex { conv_a(&m.set, m.marked)? } else { con_a(&m.set, m.marked)? };
    println!("vertex {} {}", fmt_f64(c.vertex.x), fmt_f64(c.vertex.y));
    println!("class {}", c.class);
    println!("arcs {}", arcs_text(&c));
    if let Some(path) = &a.out {
        let mut t = Table::new(&["start", "end"]);
        if c.arcs.is_full() {
            t.push(vec!["0".into(), fmt_f64(std::f64::consts::TAU)]);
        }
        for (s, e) in c.arcs.circular_arcs() {
            t.push(vec![fmt_f64(s), fmt_f64(e)]);
        }
        fs::write(path, t.to_csv())?;
    }
    Ok(())
}

fn equiv(e: EquivArgs) -> Outcome {
    let z = match (&e.z, &e.set.spec, &e.set.fixture) {
        (Some(path), _, _) => load_spec(path)?,
        _ => load_set(&e.set)?,
    };
    let y = match &e.y {
        Some(path) => load_spec(path)?.set,
        None => con_a(&z.set, z.marked)?.to_set(),
    };
    let report = strong_equiv_probe(&z.set, &y, z.marked, &ladder(&e.set.ladder)?, samples(&e.set, 1024)?)?;
    let slope = report.slope.map_or("none".to_string(), fmt_f64);
    emit(
        e.set.out.as_deref(),
        &report.to_csv(),
        &format!("verdict {}, slope {slope}", report.verdict),
    )
}

fn porosity(a: &SetArgs) -> Outcome {
    let (set, x) = match (&a.spec, &a.fixture) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))?;
            let spec = parse_line_spec(&text).map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))?;
            (spec.set, spec.base_point)
        }
        (None, Some(name)) if name == "geometric-radial" => {
            let p = fixture_params(a);
            (geometric_radii(p.q, p.c)?, 0.0)
        }
        (None, Some(name)) => {
            return Err(Failure::Usage(format!(
                "porosity takes a line spec or the geometric-radial fixture, not `{name}`"
            )))
        }
        (None, None) => return Err(Failure::Usage("one of --spec or --fixture is required".into())),
    };
    let est = porosity_estimate(&set, x, &ladder(&a.ladder)?, planar_tangent::porosity::DEFAULT_WINDOW)?;
    emit(a.out.as_deref(), &est.table().to_csv(), &format!("porosity {}", fmt_f64(est.estimate)))
}

fn verify(v: &VerifyArgs) -> Outcome {
    let report = run_acceptance(v.seed)?;
    for line in report.lines() {
        println!("{line}");
    }
    if let Some(dir) = &v.out {
        fs::create_dir_all(dir)?;
        for a in &report.artifacts {
            fs::write(dir.join(format!("{}.csv", a.name)), &a.csv)?;
        }
        fs::write(dir.join("summary.csv"), report.summary().to_csv())?;
    }
    let failed = report.criteria.iter().filter(|c| !c.passed()).count();
    println!("{} of {} criteria passed", report.criteria.len() - failed, report.criteria.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

/// CSV goes to `out` with the summary on standard output, or to standard
/// output with the summary on standard error.
fn emit(out: Option<&Path>, csv: &str, summary: &str) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, csv)?;
            println!("{summary}");
        }
        None => {
            print!("{csv}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn write_or_print(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
