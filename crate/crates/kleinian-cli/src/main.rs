//! `kleinian` — circle patterns, limit sets, slice pictures and trace
//! equations from JSON scene files.
//!
//! Exit codes: 0 success, 1 validation error (bad scene, bad flags, bad
//! paths), 2 numerical failure during computation (the library's message
//! goes to stderr verbatim).

mod scene;
mod verify;
mod writers;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use kleinian::farey::Slope;
use kleinian::mobius::Mobius;
use kleinian::necklace::{atom_circles, necklace_circles, necklace_generators, PolygonInput};
use kleinian::newton::{cone_path, polish_system, ParamFamily};
use kleinian::words::{Reduction, Word};

use scene::{cx, read_scene, OrbitMethod, Scene};

#[derive(Parser)]
#[command(name = "kleinian", version, about = "Kleinian group toolkit: necklace and atom circle patterns, limit sets, character-variety slices, Farey trace equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tangent circle chain and reflection-group generators of a polygon
    Necklace(NecklaceArgs),
    /// Double-spiral circle chain in an annulus
    Atom(AtomArgs),
    /// Sample a group's limit set by random walk or breadth-first orbit
    Limitset(LimitsetArgs),
    /// Per-pixel minimal translation length over a word batch
    Slice(SliceArgs),
    /// Newton-continued trace path of a Farey word, cusp to knot group
    FareyPath(FareyPathArgs),
    /// Polish a three-word squared-trace system by Newton's method
    Solve(SolveArgs),
    /// Run a built-in self-check suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct NecklaceArgs {
    /// scene file (mode "necklace")
    #[arg(long)]
    config: PathBuf,
    /// circle list destination (JSON); stdout when no output is given
    #[arg(long)]
    out: Option<PathBuf>,
    /// generator matrix destination (JSON)
    #[arg(long)]
    generators_out: Option<PathBuf>,
}

#[derive(Args)]
struct AtomArgs {
    /// scene file (mode "atom"); the default spiral when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// circle list destination (JSON); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LimitsetArgs {
    /// scene file (mode "limitset")
    #[arg(long)]
    config: PathBuf,
    /// "chaos" or "bfs"
    #[arg(long)]
    method: Option<String>,
    /// chaos-game sample count
    #[arg(long)]
    iterations: Option<usize>,
    /// breadth-first word length cap
    #[arg(long)]
    depth: Option<usize>,
    /// random-walk seed (overrides the scene)
    #[arg(long)]
    seed: Option<u64>,
    /// image destination (PPM), overrides the scene's image_out
    #[arg(long)]
    out: Option<PathBuf>,
    /// point cloud destination (CSV), overrides the scene's points_out
    #[arg(long)]
    points_out: Option<PathBuf>,
}

#[derive(Args)]
struct SliceArgs {
    /// scene file (mode "slice")
    #[arg(long)]
    config: PathBuf,
    /// image destination (PPM), overrides the scene's image_out
    #[arg(long)]
    out: Option<PathBuf>,
    /// raw τ grid destination (CSV), overrides the scene's values_out
    #[arg(long)]
    values_out: Option<PathBuf>,
    /// τ mapped to white (default 1)
    #[arg(long)]
    tau_max: Option<f64>,
    /// translation-length cutoff for the baseline word mask (default 1e-9)
    #[arg(long)]
    mask_tolerance: Option<f64>,
    /// seed for random word batches (overrides the scene)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct FareyPathArgs {
    /// scene file (mode "farey-path"); flags alone also suffice
    #[arg(long)]
    config: Option<PathBuf>,
    /// slope p/q, e.g. 3/5
    #[arg(long)]
    slope: Option<String>,
    /// radius of the start-point scan circle (default 20)
    #[arg(long = "R")]
    radius: Option<f64>,
    /// step counts "hyperbolic,elliptic", e.g. 30,30
    #[arg(long)]
    steps: Option<String>,
    /// path destination (CSV); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// scene file (mode "solve")
    #[arg(long)]
    config: PathBuf,
    /// solution destination (JSON); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// scene file (mode "verify"); --suite alone also suffices
    #[arg(long)]
    config: Option<PathBuf>,
    /// "trace-identities" or "landmarks"
    #[arg(long)]
    suite: Option<String>,
    /// seed for the sampled identities (default 0)
    #[arg(long)]
    seed: Option<u64>,
}

/// An error tagged with the exit code it deserves.
struct Failure(u8, anyhow::Error);

fn invalid(e: impl Into<anyhow::Error>) -> Failure {
    Failure(1, e.into())
}

fn numerical(e: impl std::fmt::Display) -> Failure {
    Failure(2, anyhow!("{e}"))
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Necklace(args) => run_necklace(args),
        Command::Atom(args) => run_atom(args),
        Command::Limitset(args) => run_limitset(args),
        Command::Slice(args) => run_slice(args),
        Command::FareyPath(args) => run_farey_path(args),
        Command::Solve(args) => run_solve(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, e)) => {
            eprintln!("{e:#}");
            ExitCode::from(code)
        }
    }
}

fn load_scene(path: &Path, subcommand: &str) -> Result<Scene, Failure> {
    let scene = read_scene(path).map_err(invalid)?;
    if scene.mode() != subcommand {
        return Err(invalid(anyhow!(
            "scene {} has mode \"{}\" but the subcommand is {subcommand}",
            path.display(),
            scene.mode()
        )));
    }
    Ok(scene)
}

/// Write to the path when one is given, stdout otherwise.
fn emit_text(path: Option<&Path>, text: &str) -> Run {
    match path {
        Some(p) => writers::write_text(p, text).map_err(invalid),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_necklace(args: NecklaceArgs) -> Run {
    let Scene::Necklace(mut scn) = load_scene(&args.config, "necklace")? else {
        unreachable!("load_scene checked the mode");
    };
    if let Some(p) = args.out {
        scn.circles_out = Some(p.display().to_string());
    }
    if let Some(p) = args.generators_out {
        scn.generators_out = Some(p.display().to_string());
    }
    let polygon =
        PolygonInput::new(scn.points.iter().copied().map(cx).collect()).map_err(invalid)?;

    let circles = necklace_circles(&polygon).map_err(numerical)?;
    match (&scn.circles_out, &scn.generators_out) {
        (None, None) => emit_text(None, &writers::circles_json(&circles))?,
        (circles_out, generators_out) => {
            if let Some(p) = circles_out {
                emit_text(Some(Path::new(p)), &writers::circles_json(&circles))?;
            }
            if let Some(p) = generators_out {
                let gens = necklace_generators(&circles).map_err(numerical)?;
                let names: Vec<String> = (1..=gens.len()).map(|i| format!("a{i}")).collect();
                emit_text(Some(Path::new(p)), &writers::generators_json(&names, &gens))?;
            }
        }
    }
    Ok(())
}

fn run_atom(args: AtomArgs) -> Run {
    let scn = match &args.config {
        Some(path) => {
            let Scene::Atom(scn) = load_scene(path, "atom")? else {
                unreachable!("load_scene checked the mode");
            };
            scn
        }
        None => scene::AtomScene {
            mode: "atom".into(),
            growth: None,
            inner_offset: None,
            amplitude: None,
            start_angles: None,
            start_angles_pi: None,
            half_arm: None,
            guess_factor: None,
            nudge_band: None,
            circles_out: None,
        },
    };
    let spec = scn.build().map_err(invalid)?;
    let circles = atom_circles(&spec).map_err(numerical)?;
    let out = args.out.map(|p| p.display().to_string()).or(scn.circles_out);
    emit_text(out.as_deref().map(Path::new), &writers::circles_json(&circles))
}

fn run_limitset(args: LimitsetArgs) -> Run {
    let Scene::Limitset(mut scn) = load_scene(&args.config, "limitset")? else {
        unreachable!("load_scene checked the mode");
    };
    if let Some(m) = &args.method {
        scn.method = Some(match m.as_str() {
            "chaos" => OrbitMethod::Chaos,
            "bfs" => OrbitMethod::Bfs,
            other => {
                return Err(invalid(anyhow!(
                    "unknown method \"{other}\"; expected chaos or bfs"
                )))
            }
        });
    }
    if let Some(n) = args.iterations {
        scn.iterations = Some(n);
    }
    if let Some(d) = args.depth {
        scn.depth = Some(d);
    }
    if let Some(p) = args.out {
        scn.image_out = Some(p.display().to_string());
    }
    if let Some(p) = args.points_out {
        scn.points_out = Some(p.display().to_string());
    }

    // validation: generators from exactly one source, at least one output
    let gens: Vec<Mobius> = match (&scn.family, &scn.points) {
        (Some(_), Some(_)) => {
            return Err(invalid(anyhow!(
                "give a family or polygon points, not both"
            )))
        }
        (None, None) => {
            return Err(invalid(anyhow!(
                "the scene needs a generator source: a family or polygon points"
            )))
        }
        (Some(family), None) => {
            let spec = family.build().map_err(invalid)?;
            let t = scn.t.map(cx).unwrap_or(Complex64::new(0.0, 0.0));
            spec.generators_at(t)
        }
        (None, Some(points)) => {
            let polygon =
                PolygonInput::new(points.iter().copied().map(cx).collect()).map_err(invalid)?;
            let circles = necklace_circles(&polygon).map_err(numerical)?;
            necklace_generators(&circles).map_err(numerical)?
        }
    };
    if scn.image_out.is_none() && scn.points_out.is_none() {
        return Err(invalid(anyhow!(
            "the scene declares no outputs; set image_out or points_out"
        )));
    }
    let window = match &scn.window {
        Some(w) => Some(w.build().map_err(invalid)?),
        None if scn.image_out.is_some() => {
            return Err(invalid(anyhow!("an image needs a window")))
        }
        None => None,
    };

    let method = scn.method.unwrap_or(OrbitMethod::Chaos);
    let cloud = match method {
        OrbitMethod::Chaos => {
            if scn.depth.is_some() || scn.base_points.is_some() {
                return Err(invalid(anyhow!(
                    "depth and base_points belong to the bfs method"
                )));
            }
            let iterations = scn.iterations.unwrap_or(100_000);
            let seed = args.seed.or(scn.seed).unwrap_or(0);
            let burn_in = scn.burn_in.unwrap_or(100);
            kleinian::limits::chaos_game(&gens, iterations, seed, burn_in).map_err(numerical)?
        }
        OrbitMethod::Bfs => {
            if scn.iterations.is_some() || scn.burn_in.is_some() {
                return Err(invalid(anyhow!(
                    "iterations and burn_in belong to the chaos method"
                )));
            }
            let depth = scn.depth.unwrap_or(6);
            let base: Option<Vec<Complex64>> = scn
                .base_points
                .as_ref()
                .map(|pts| pts.iter().copied().map(cx).collect());
            kleinian::limits::bfs_orbit(&gens, depth, base.as_deref()).map_err(numerical)?
        }
    };
    if cloud.dropped > 0 {
        eprintln!(
            "warning: {} of the sampled points fell at ∞ or outside the escape radius",
            cloud.dropped
        );
    }

    if let Some(path) = &scn.image_out {
        let window = window.as_ref().expect("checked while validating");
        let counts = kleinian::limits::rasterize(&cloud, window).map_err(numerical)?;
        let gray = writers::counts_to_gray(&counts);
        let bytes =
            writers::ppm_bytes(window.px_width, window.px_height, &gray).map_err(invalid)?;
        writers::write_bytes(Path::new(path), &bytes).map_err(invalid)?;
    }
    if let Some(path) = &scn.points_out {
        emit_text(Some(Path::new(path)), &writers::points_csv(&cloud.points))?;
    }
    Ok(())
}

fn run_slice(args: SliceArgs) -> Run {
    let Scene::Slice(mut scn) = load_scene(&args.config, "slice")? else {
        unreachable!("load_scene checked the mode");
    };
    if let Some(p) = args.out {
        scn.image_out = Some(p.display().to_string());
    }
    if let Some(p) = args.values_out {
        scn.values_out = Some(p.display().to_string());
    }
    if let Some(t) = args.tau_max {
        scn.tau_max = Some(t);
    }
    if let Some(t) = args.mask_tolerance {
        scn.mask_tolerance = Some(t);
    }

    let spec = scn.family.build().map_err(invalid)?;
    let window = scn.window.build().map_err(invalid)?;
    let source = scn.words.build(args.seed).map_err(invalid)?;
    let tau_max = scn.tau_max.unwrap_or(1.0);
    if !(tau_max > 0.0) {
        return Err(invalid(anyhow!("tau_max must be positive, got {tau_max}")));
    }
    let tol = scn.mask_tolerance.unwrap_or(1e-9);
    if !(tol >= 0.0) {
        return Err(invalid(anyhow!(
            "mask_tolerance must be non-negative, got {tol}"
        )));
    }
    if scn.image_out.is_none() && scn.values_out.is_none() {
        return Err(invalid(anyhow!(
            "the scene declares no outputs; set image_out or values_out"
        )));
    }

    let raster = kleinian::slice::render_slice(&spec, cx(scn.test_point), &window, &source, tol)
        .map_err(numerical)?;
    if raster.mask_size > 0 {
        eprintln!(
            "note: {} of the words were parabolic at the test point and masked",
            raster.mask_size
        );
    }
    if !raster.degenerate.is_empty() {
        eprintln!(
            "warning: {} pixels hit singular generators and carry value 0",
            raster.degenerate.len()
        );
    }

    if let Some(path) = &scn.image_out {
        let gray = kleinian::slice::colormap(&raster, tau_max).map_err(numerical)?;
        let bytes =
            writers::ppm_bytes(window.px_width, window.px_height, &gray).map_err(invalid)?;
        writers::write_bytes(Path::new(path), &bytes).map_err(invalid)?;
    }
    if let Some(path) = &scn.values_out {
        emit_text(Some(Path::new(path)), &writers::raster_csv(&raster))?;
    }
    Ok(())
}

fn parse_slope(text: &str) -> Result<Slope, Failure> {
    let parts: Vec<&str> = text.split('/').collect();
    let err = || invalid(anyhow!("slope must look like p/q, e.g. 3/5, got \"{text}\""));
    if parts.len() != 2 {
        return Err(err());
    }
    let p: u64 = parts[0].trim().parse().map_err(|_| err())?;
    let q: u64 = parts[1].trim().parse().map_err(|_| err())?;
    Slope::new(p, q).map_err(invalid)
}

fn run_farey_path(args: FareyPathArgs) -> Run {
    let scn = match &args.config {
        Some(path) => {
            let Scene::FareyPath(scn) = load_scene(path, "farey-path")? else {
                unreachable!("load_scene checked the mode");
            };
            Some(scn)
        }
        None => None,
    };
    let slope = match (&args.slope, scn.as_ref().map(|s| s.slope)) {
        (Some(text), _) => parse_slope(text)?,
        (None, Some([p, q])) => Slope::new(p, q).map_err(invalid)?,
        (None, None) => return Err(invalid(anyhow!("a slope is needed: --slope p/q"))),
    };
    let radius = args
        .radius
        .or(scn.as_ref().and_then(|s| s.radius))
        .unwrap_or(20.0);
    let (n_hyp, n_ell) = match &args.steps {
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            let err = || invalid(anyhow!("steps must look like 30,30, got \"{text}\""));
            if parts.len() != 2 {
                return Err(err());
            }
            (
                parts[0].trim().parse().map_err(|_| err())?,
                parts[1].trim().parse().map_err(|_| err())?,
            )
        }
        None => (
            scn.as_ref().and_then(|s| s.n_hyp).unwrap_or(30),
            scn.as_ref().and_then(|s| s.n_ell).unwrap_or(30),
        ),
    };
    let out = args
        .out
        .map(|p| p.display().to_string())
        .or(scn.and_then(|s| s.out));

    let trace = cone_path(slope, radius, n_hyp, n_ell).map_err(numerical)?;
    emit_text(out.as_deref().map(Path::new), &writers::path_csv(&trace))
}

fn run_solve(args: SolveArgs) -> Run {
    let Scene::Solve(scn) = load_scene(&args.config, "solve")? else {
        unreachable!("load_scene checked the mode");
    };
    let family_name = scn.family.to_lowercase().replace('_', "-");
    let (family, letters, param_names) = match family_name.as_str() {
        "compression-body" => (
            ParamFamily::CompressionBody,
            vec!["P", "Q", "M"],
            ["alpha", "beta", "lambda"],
        ),
        "grandma" => (ParamFamily::Grandma, vec!["X", "Y"], ["t_x", "t_y", "t_xy"]),
        other => {
            return Err(invalid(anyhow!(
                "unknown solve family \"{other}\"; expected compression-body or grandma"
            )))
        }
    };
    if scn.words.len() != 3 {
        return Err(invalid(anyhow!(
            "the trace system needs exactly 3 words, got {}",
            scn.words.len()
        )));
    }
    if scn.guess.len() != 3 {
        return Err(invalid(anyhow!(
            "the guess needs exactly 3 parameters, got {}",
            scn.guess.len()
        )));
    }
    let words: Vec<Word> = scn
        .words
        .iter()
        .map(|t| Word::parse(t, &letters, Reduction::Free))
        .collect::<Result<_, _>>()
        .map_err(invalid)?;
    let targets: Vec<Complex64> = match &scn.targets {
        Some(list) => {
            if list.len() != 3 {
                return Err(invalid(anyhow!(
                    "targets need exactly 3 entries, got {}",
                    list.len()
                )));
            }
            list.iter().copied().map(cx).collect()
        }
        None => vec![Complex64::new(4.0, 0.0); 3],
    };
    let guess = [cx(scn.guess[0]), cx(scn.guess[1]), cx(scn.guess[2])];

    let solution = polish_system(family, &words, &targets, guess).map_err(numerical)?;
    let out = args.out.map(|p| p.display().to_string()).or(scn.out);
    emit_text(
        out.as_deref().map(Path::new),
        &writers::solution_json(param_names, &solution),
    )
}

fn run_verify(args: VerifyArgs) -> Run {
    let scn = match &args.config {
        Some(path) => {
            let Scene::Verify(scn) = load_scene(path, "verify")? else {
                unreachable!("load_scene checked the mode");
            };
            Some(scn)
        }
        None => None,
    };
    let suite = match args.suite.or(scn.as_ref().map(|s| s.suite.clone())) {
        Some(s) => s,
        None => return Err(invalid(anyhow!("a suite is needed: --suite NAME"))),
    };
    let seed = args.seed.or(scn.and_then(|s| s.seed)).unwrap_or(0);
    let all_passed = verify::run_suite(&suite, seed).map_err(invalid)?;
    if all_passed {
        Ok(())
    } else {
        Err(numerical("one or more checks failed"))
    }
}
