//! Command-line front end. Each subcommand is a thin wrapper over one
//! library call and writes that call's output format.

pub mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::closure::{closure_run, next_generation, DefectSet};
use crate::geom::{ConvexPolygon, Rect};
use crate::growth::{box_coupling_run, grow_run, BoxConfig, BoxGrid, ColorFilter, GrowthConfig, GrowthError, GrowthVariant};
use crate::lifting::{envelope_subdivision, h_min_approx, h_min_oracle, lifting_feasible, LiftingError, Tension};
use crate::mc::{aggregates_to_csv, area_curves_to_csv, run_sweep, summarize, Experiment, McError, SweepConfig};
use crate::scene::{
    read_scene, read_scene_with, sample_poisson_scene, write_scene, write_scene_with, RadialLaw, Scene, SceneError,
    SceneExtras, ShapeDistribution, VertexLaw,
};
use crate::stress::{read_framework, spider_web_lp, triangular_lattice, write_framework, SpiderWeb, StressError};
use render::{svg_render, Layer, RenderData, RenderError, RenderSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Lifting(#[from] LiftingError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Stress(#[from] StressError),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(io_err(path))
}

#[derive(Parser, Debug)]
#[command(name = "membrane-perc", version, about = "Tension percolation in membranes with random convex holes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a Poisson scene.
    Gen(GenArgs),
    /// Run defect closure on a scene and write the per-generation report.
    Close(CloseArgs),
    /// Decide whether the complement of the holes supports a tension.
    Tension(TensionArgs),
    /// Smallest enlarged hole system that supports a tension.
    Hmin(HminArgs),
    /// Grow a convex set from one hole.
    Grow(GrowArgs),
    /// Box openness on a grid.
    Boxes(BoxesArgs),
    /// Diluted triangular lattice spider-web test.
    Lattice(LatticeArgs),
    /// Seeded Monte-Carlo sweep over λ.
    Sweep(SweepArgs),
    /// Draw scene layers as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ShapeKind {
    Disk,
    UniformDisk,
    Polygon,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    lambda: f64,
    /// Side of the square window `[0, side]²`.
    #[arg(long)]
    window: f64,
    /// Padding around the window; a quarter of the side by default.
    #[arg(long)]
    pad: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "disk")]
    shape: ShapeKind,
    /// Disk radius, or the largest radius for random shapes.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 0.5)]
    rmin: f64,
    #[arg(long, default_value_t = 6)]
    vertices: usize,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct CloseArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value_t = 60)]
    max_gen: u32,
}

#[derive(Args, Debug)]
struct TensionArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Scene copy carrying the lifting or the certificate.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HminArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Exhaustive search instead of the merge heuristic (small inputs only).
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Full,
    Ring,
    Restricted,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ColorArg {
    Any,
    Green,
    Blue,
}

#[derive(Args, Debug)]
struct GrowArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    origin: u64,
    #[arg(long, value_enum, default_value = "full")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "any")]
    color: ColorArg,
    #[arg(long, default_value_t = 50)]
    k_max: u32,
    /// Trace CSV `k,vertices,inradius,contains_next`.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoxesArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 2)]
    k0: u32,
    #[arg(long, default_value_t = 2)]
    t: u32,
    #[arg(long, default_value_t = 4)]
    nx: usize,
    #[arg(long, default_value_t = 4)]
    ny: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Framework JSON, with the stress when one exists.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExperimentArg {
    Closure,
    Growth,
    Boxes,
    Lattice,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "closure")]
    experiment: ExperimentArg,
    /// Comma-separated rates (retention probabilities for `lattice`).
    #[arg(long, value_delimiter = ',', required = true)]
    lambdas: Vec<f64>,
    #[arg(long, default_value_t = 30.0)]
    window: f64,
    #[arg(long)]
    pad: Option<f64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 60)]
    max_gen: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 2_000_000)]
    hole_cap: usize,
    /// Nest the scenes of increasing λ by superposition.
    #[arg(long)]
    coupled: bool,
    /// Record wall-clock time per trial (output is then not reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long, default_value_t = 10)]
    lattice_n: usize,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    aggregates: Option<PathBuf>,
    #[arg(long)]
    areas: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', required = true)]
    layers: Vec<Layer>,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value_t = 60)]
    max_gen: u32,
    /// Framework JSON for the `framework` layer.
    #[arg(long)]
    framework: Option<PathBuf>,
    /// Box CSV for the `boxes` layer.
    #[arg(long)]
    boxes: Option<PathBuf>,
    #[arg(long)]
    box_side: Option<f64>,
    /// Outline the scene window as the core.
    #[arg(long)]
    core: bool,
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code: 0 on success, 1 on failure or a negative decision, 2 on
/// usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut say = |line: String| {
        let _ = writeln!(out, "{line}");
    };
    match cmd {
        Command::Gen(a) => {
            let shape = match a.shape {
                ShapeKind::Disk => ShapeDistribution::FixedDisk(a.radius),
                ShapeKind::UniformDisk => ShapeDistribution::DiskRadius(RadialLaw::Uniform { lo: a.rmin, hi: a.radius }),
                ShapeKind::Polygon => ShapeDistribution::RandomPolygon {
                    vertices: VertexLaw::Fixed(a.vertices),
                    radial: RadialLaw::Uniform { lo: a.rmin, hi: a.radius },
                },
            };
            let window = Rect::square(a.window);
            let pad = a.pad.unwrap_or(0.25 * a.window);
            let scene = sample_poisson_scene(window, pad, a.lambda, &shape, a.seed)?;
            write_scene(&scene, &a.output)?;
            say(format!("holes={}", scene.holes.len()));
        }
        Command::Close(a) => {
            let scene = read_scene(&a.input)?;
            if a.max_gen == 0 {
                return Err(CliError::Input("--max-gen must be at least 1".into()));
            }
            let (report, _) = closure_run(&scene, a.max_gen, &scene.window);
            write_text(&a.output, &report.to_csv(scene.seed, scene.lambda))?;
            say(match (report.covering_generation, report.fixed_point_generation) {
                (Some(k), _) => format!("COVERED k={k}"),
                (None, Some(k)) => format!("FIXED_POINT k={k}"),
                (None, None) => format!("CENSORED k={}", report.last_generation()),
            });
        }
        Command::Tension(a) => {
            let scene = read_scene(&a.input)?;
            let ids: Vec<u64> = scene.holes.iter().map(|h| h.id).collect();
            let verdict = lifting_feasible(&scene.polygons())?;
            let mut extras = SceneExtras::default();
            match &verdict {
                Tension::Feasible(l) => {
                    say("FEASIBLE".into());
                    say(format!("holes={} min_margin={} exact={}", ids.len(), l.min_margin, l.exact));
                    extras.lifting = Some(l.to_records(&ids));
                }
                Tension::Infeasible(c) => {
                    say("INFEASIBLE".into());
                    let support: Vec<String> = c.support.iter().map(|&h| ids[h].to_string()).collect();
                    say(format!(
                        "support={} multipliers={} exact={}",
                        support.join(","),
                        c.multipliers.len(),
                        c.is_exact()
                    ));
                    extras.certificate = Some(c.to_record(&ids));
                }
            }
            if let Some(o) = &a.output {
                write_scene_with(&scene, &extras, o)?;
            }
        }
        Command::Hmin(a) => {
            let scene = read_scene(&a.input)?;
            let holes = scene.polygons();
            let system = if a.oracle {
                h_min_oracle(&holes)?.system
            } else {
                h_min_approx(&holes)?
            };
            let area: f64 = system.iter().map(ConvexPolygon::area).sum();
            write_scene(&Scene::from_polygons(scene.window, scene.pad, &system), &a.output)?;
            say(format!("holes={} area={area}", system.len()));
        }
        Command::Grow(a) => {
            let scene = read_scene(&a.input)?;
            let color = match a.color {
                ColorArg::Any => ColorFilter::Any,
                ColorArg::Green => ColorFilter::Green,
                ColorArg::Blue => ColorFilter::Blue,
            };
            let cfg = GrowthConfig {
                variant: match a.variant {
                    VariantArg::Full => GrowthVariant::Full,
                    VariantArg::Ring => GrowthVariant::Ring,
                    VariantArg::Restricted => GrowthVariant::Restricted,
                },
                color,
                angular_exclusion: matches!(a.variant, VariantArg::Restricted),
                k_max: a.k_max,
            };
            let trace = grow_run(&scene, a.origin, &cfg)?;
            say(match trace.stopped_at {
                Some(k) => format!("STOPPED k={k}"),
                None => format!("K_MAX k={}", a.k_max),
            });
            if let Some(o) = &a.output {
                let mut csv = String::from("k,vertices,inradius,contains_next\n");
                for (i, (g, c)) in trace.steps.iter().zip(&trace.contains_next).enumerate() {
                    csv.push_str(&format!(
                        "{},{},{:.9},{}\n",
                        trace.first_k + i as u32,
                        g.len(),
                        g.inradius_about(trace.origin),
                        c
                    ));
                }
                write_text(o, &csv)?;
            }
        }
        Command::Boxes(a) => {
            let bcfg = BoxConfig::new(a.k0, a.t)?;
            let grid = box_coupling_run(a.lambda, &bcfg, a.nx, a.ny, a.seed)?;
            write_text(&a.output, &grid.to_csv())?;
            say(format!(
                "open={}/{} largest_cluster={} corner_violations={}",
                grid.open_count(),
                a.nx * a.ny,
                grid.largest_cluster,
                grid.corner_violations
            ));
        }
        Command::Lattice(a) => {
            if !(0.0..=1.0).contains(&a.p) {
                return Err(CliError::Input(format!("--p {} is not a probability", a.p)));
            }
            let fw = triangular_lattice(a.n, a.p, a.seed)?;
            let verdict = spider_web_lp(&fw)?;
            let stress = match &verdict {
                SpiderWeb::Feasible(s) if fw.is_nontrivial() => Some(s.as_slice()),
                _ => None,
            };
            if let Some(o) = &a.output {
                write_framework(o, &fw, stress)?;
            }
            say(format!(
                "{} vertices={} edges={}",
                if stress.is_some() { "FEASIBLE" } else { "INFEASIBLE" },
                fw.vertices.len(),
                fw.edges.len()
            ));
            if stress.is_none() {
                return Ok(1);
            }
        }
        Command::Sweep(a) => {
            let mut cfg = SweepConfig::closure(a.lambdas, a.window, a.trials, a.max_gen, a.seed);
            cfg.experiment = match a.experiment {
                ExperimentArg::Closure => Experiment::Closure,
                ExperimentArg::Growth => Experiment::Growth,
                ExperimentArg::Boxes => Experiment::Boxes,
                ExperimentArg::Lattice => Experiment::Lattice,
            };
            if let Some(p) = a.pad {
                cfg.pad = p;
            }
            cfg.threads = a.threads;
            cfg.hole_cap = a.hole_cap;
            cfg.coupled = a.coupled;
            cfg.timing = a.timing;
            cfg.lattice_n = a.lattice_n;
            let table = run_sweep(&cfg)?;
            write_text(&a.output, &table.to_csv())?;
            let aggs = summarize(&table);
            let agg_csv = aggregates_to_csv(&aggs);
            if let Some(p) = &a.aggregates {
                write_text(p, &agg_csv)?;
            }
            if let Some(p) = &a.areas {
                write_text(p, &area_curves_to_csv(&aggs))?;
            }
            let _ = write!(out, "{agg_csv}");
        }
        Command::Render(a) => {
            let svg = render_command(&a)?;
            write_text(&a.output, &svg)?;
        }
    }
    Ok(0)
}

/// Defects created at each generation after the holes, until nothing merges.
pub fn defect_generations(scene: &Scene, max_gen: u32) -> Vec<Vec<ConvexPolygon>> {
    let mut cur = DefectSet::from_scene(scene);
    let mut gens = Vec::new();
    for _ in 0..max_gen {
        let next = next_generation(&cur);
        if next.len() == cur.len() {
            break;
        }
        let prev = cur.polygons();
        gens.push(next.polygons().into_iter().filter(|p| !prev.contains(p)).collect());
        cur = next;
    }
    gens
}

/// Parses the `i,j,open,candidate_index` CSV of the `boxes` subcommand.
pub fn read_box_csv(text: &str) -> Result<BoxGrid, CliError> {
    let mut cells = Vec::new();
    for (n, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        let bad = || CliError::Input(format!("box CSV line {}: {line:?}", n + 1));
        if f.len() != 4 {
            return Err(bad());
        }
        let i: usize = f[0].parse().map_err(|_| bad())?;
        let j: usize = f[1].parse().map_err(|_| bad())?;
        let open: bool = f[2].parse().map_err(|_| bad())?;
        cells.push((i, j, open));
    }
    let nx = cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
    let ny = cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
    if nx * ny != cells.len() || nx == 0 {
        return Err(CliError::Input("box CSV does not describe a full grid".into()));
    }
    let mut open = vec![false; nx * ny];
    for (i, j, o) in cells {
        open[j * nx + i] = o;
    }
    Ok(BoxGrid::from_open(nx, ny, open))
}

fn render_command(a: &RenderArgs) -> Result<String, CliError> {
    let loaded = a.input.as_ref().map(read_scene_with).transpose()?;
    let boxes = match &a.boxes {
        Some(p) => {
            let grid = read_box_csv(&fs::read_to_string(p).map_err(io_err(p))?)?;
            let side = a
                .box_side
                .ok_or_else(|| CliError::Input("--box-side is required with --boxes".into()))?;
            Some((grid, side))
        }
        None => None,
    };
    let framework = a.framework.as_ref().map(read_framework).transpose()?;
    let window = match (&loaded, &boxes, &framework) {
        (Some((s, _)), _, _) => s.window,
        (None, Some((g, side)), _) => Rect::new(0.0, g.nx as f64 * side, 0.0, g.ny as f64 * side),
        (None, None, Some((fw, _))) => {
            let xs = fw.vertices.iter().map(|v| v.x);
            let ys = fw.vertices.iter().map(|v| v.y);
            Rect::new(
                xs.clone().fold(f64::INFINITY, f64::min),
                xs.fold(f64::NEG_INFINITY, f64::max),
                ys.clone().fold(f64::INFINITY, f64::min),
                ys.fold(f64::NEG_INFINITY, f64::max),
            )
        }
        _ => return Err(CliError::Input("render needs --input, --boxes or --framework".into())),
    };
    let mut data = RenderData::new(window);
    if let Some((scene, extras)) = &loaded {
        data.holes = Some(scene.polygons());
        if a.layers.contains(&Layer::Defects) {
            data.defects = Some(defect_generations(scene, a.max_gen));
        }
        if a.layers.contains(&Layer::Cells) {
            let lifting = match &extras.lifting {
                Some(records) => Some(crate::lifting::Lifting::from_records(records)),
                None => match lifting_feasible(&scene.polygons())? {
                    Tension::Feasible(l) => Some(l),
                    Tension::Infeasible(_) => None,
                },
            };
            if let Some(l) = lifting {
                let sub = envelope_subdivision(&l, &scene.window)?;
                data.cells = Some(sub.cells.into_iter().map(|(_, c)| c).collect());
            }
        }
    }
    data.framework = framework;
    data.boxes = boxes;
    let mut spec = RenderSpec::new(a.layers.clone());
    if a.core {
        spec.core = Some(window);
    }
    Ok(svg_render(&spec, &data)?)
}
