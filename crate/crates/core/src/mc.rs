//! Seeded parameter sweeps over λ and their aggregates.
//!
//! Every sweep writes one row per `(λ, trial)` under the fixed header
//! [`RESULTS_CSV_HEADER`]. The columns keep their names for every experiment
//! kind but carry the following values:
//!
//! | kind      | `covering_generation`          | `fixed_point_generation` | `holes`          |
//! |-----------|--------------------------------|--------------------------|------------------|
//! | `closure` | first generation covering core | first stable generation  | holes sampled    |
//! | `growth`  | first `k` with core ⊆ `G(k)`   | `stopped_at`             | holes sampled    |
//! | `boxes`   | number of open boxes           | largest open cluster     | holes sampled    |
//! | `lattice` | `0` if the lattice is a web    | empty                    | edges kept       |
//!
//! For `lattice` the λ values are edge-retention probabilities.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::closure::{closure_run_with, ClosureConfig, DefectSet, DEFAULT_AREA_ROWS};
use crate::geom::{Point, Rect};
use crate::growth::{box_coupling_run, grow_run, BoxConfig, GrowthConfig, GrowthError};
use crate::scene::{sample_poisson_scene, Hole, HoleShape, Scene, SceneError, ShapeDistribution};
use crate::seed;
use crate::stress::{is_spider_web, triangular_lattice, StressError};

pub const RESULTS_CSV_HEADER: &str =
    "lambda,trial,seed,covering_generation,censored,fixed_point_generation,holes,runtime_ms";
pub const AGGREGATES_CSV_HEADER: &str =
    "lambda,trials,uncensored,censored_fraction,skipped,median,p10,p90";
/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "MEMBRANE_PERC_THREADS";

#[derive(Debug, Error)]
pub enum McError {
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Stress(#[from] StressError),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Closure,
    Growth,
    Boxes,
    Lattice,
}

impl std::str::FromStr for Experiment {
    type Err = McError;

    fn from_str(s: &str) -> Result<Self, McError> {
        match s {
            "closure" => Ok(Experiment::Closure),
            "growth" => Ok(Experiment::Growth),
            "boxes" => Ok(Experiment::Boxes),
            "lattice" => Ok(Experiment::Lattice),
            _ => Err(McError::Config(format!("unknown experiment {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub lambdas: Vec<f64>,
    pub shape: ShapeDistribution,
    /// Side of the square core window `[0, side]²`.
    pub window: f64,
    pub pad: f64,
    pub trials: usize,
    pub max_gen: u32,
    pub master_seed: u64,
    pub experiment: Experiment,
    /// Trials sampling more holes than this are skipped and reported.
    pub hole_cap: usize,
    /// Build each λ scene as the previous one plus independent extra holes.
    pub coupled: bool,
    /// Worker threads; `None` uses the environment cap or all cores.
    pub threads: Option<usize>,
    /// Fill the `runtime_ms` column (makes output non-reproducible).
    pub timing: bool,
    pub boxes: BoxConfig,
    pub box_grid: (usize, usize),
    pub lattice_n: usize,
}

impl SweepConfig {
    pub fn closure(lambdas: Vec<f64>, window: f64, trials: usize, max_gen: u32, master_seed: u64) -> Self {
        SweepConfig {
            lambdas,
            shape: ShapeDistribution::FixedDisk(1.0),
            window,
            pad: 0.25 * window,
            trials,
            max_gen,
            master_seed,
            experiment: Experiment::Closure,
            hole_cap: 2_000_000,
            coupled: false,
            threads: None,
            timing: false,
            boxes: BoxConfig::new(2, 2).expect("valid default"),
            box_grid: (2, 2),
            lattice_n: 10,
        }
    }

    pub fn validate(&self) -> Result<(), McError> {
        if self.trials == 0 {
            return Err(McError::Config("trials must be at least 1".into()));
        }
        if self.lambdas.is_empty() || self.lambdas.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
            return Err(McError::Config("λ values must be positive".into()));
        }
        if self.experiment == Experiment::Lattice && self.lambdas.iter().any(|&p| p > 1.0) {
            return Err(McError::Config("lattice probabilities must lie in (0, 1]".into()));
        }
        if self.coupled && self.lambdas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(McError::Config("coupled sweeps need increasing λ".into()));
        }
        if self.max_gen == 0 {
            return Err(McError::Config("max_gen must be at least 1".into()));
        }
        if !(self.window > 0.0 && self.pad >= 0.0) {
            return Err(McError::Config("window must be positive and pad non-negative".into()));
        }
        self.shape.validate()?;
        Ok(())
    }

    pub fn core(&self) -> Rect {
        Rect::square(self.window)
    }

    fn effective_threads(&self) -> usize {
        let env = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
        let n = match (self.threads, env) {
            (Some(t), Some(e)) => t.min(e),
            (Some(t), None) => t,
            (None, Some(e)) => e,
            (None, None) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        n.max(1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub lambda: f64,
    pub trial: usize,
    pub seed: u64,
    pub covering_generation: Option<u32>,
    pub censored: bool,
    /// The trial exceeded the hole cap and was not run.
    pub skipped: bool,
    pub fixed_point_generation: Option<u32>,
    pub holes: usize,
    pub runtime_ms: Option<f64>,
    /// Covered core fraction per generation (closure only).
    pub area_curve: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub experiment: Experiment,
    pub rows: Vec<TrialRow>,
}

impl ResultTable {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{RESULTS_CSV_HEADER}\n");
        let opt = |v: Option<u32>| v.map(|k| k.to_string()).unwrap_or_default();
        for r in &self.rows {
            let censored = if r.skipped { "skipped".to_string() } else { r.censored.to_string() };
            let rt = r.runtime_ms.map(|t| format!("{t:.3}")).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.lambda,
                r.trial,
                r.seed,
                opt(r.covering_generation),
                censored,
                opt(r.fixed_point_generation),
                r.holes,
                rt
            )
            .unwrap();
        }
        out
    }

    pub fn rows_for(&self, lambda: f64) -> impl Iterator<Item = &TrialRow> {
        self.rows.iter().filter(move |r| r.lambda == lambda)
    }
}

fn scene_for(cfg: &SweepConfig, li: usize, trial: usize) -> Result<(Scene, u64), McError> {
    let core = cfg.core();
    let s = seed::trial_seed(cfg.master_seed, li as u64, trial as u64);
    if !cfg.coupled {
        return Ok((sample_poisson_scene(core, cfg.pad, cfg.lambdas[li], &cfg.shape, s)?, s));
    }
    // increments of rate λ_j − λ_{j−1}, each from its own seed
    let mut scene = sample_poisson_scene(core, cfg.pad, cfg.lambdas[0], &cfg.shape, seed::trial_seed(cfg.master_seed, 0, trial as u64))?;
    for j in 1..=li {
        let extra = sample_poisson_scene(
            core,
            cfg.pad,
            cfg.lambdas[j] - cfg.lambdas[j - 1],
            &cfg.shape,
            seed::trial_seed(cfg.master_seed, j as u64, trial as u64),
        )?;
        scene = scene.superpose(&extra);
    }
    scene.seed = s;
    Ok((scene, s))
}

/// Unit disk at the core center with a fresh id (the seed hole of the growth).
pub fn with_origin_disk(scene: &Scene) -> (Scene, u64) {
    let id = scene.holes.iter().map(|h| h.id + 1).max().unwrap_or(0);
    let mut s = scene.clone();
    s.holes.push(Hole {
        id,
        center: Point::new(
            0.5 * (scene.window.xmin + scene.window.xmax),
            0.5 * (scene.window.ymin + scene.window.ymax),
        ),
        shape: HoleShape::disk(1.0).expect("unit radius"),
    });
    (s, id)
}

fn run_trial(cfg: &SweepConfig, li: usize, trial: usize) -> Result<TrialRow, McError> {
    let start = Instant::now();
    let lambda = cfg.lambdas[li];
    let mut row = TrialRow {
        lambda,
        trial,
        seed: seed::trial_seed(cfg.master_seed, li as u64, trial as u64),
        covering_generation: None,
        censored: false,
        skipped: false,
        fixed_point_generation: None,
        holes: 0,
        runtime_ms: None,
        area_curve: Vec::new(),
    };
    match cfg.experiment {
        Experiment::Closure | Experiment::Growth => {
            let (scene, _) = scene_for(cfg, li, trial)?;
            row.holes = scene.holes.len();
            if row.holes > cfg.hole_cap {
                row.skipped = true;
                row.censored = true;
            } else if cfg.experiment == Experiment::Closure {
                let (report, _) = closure_run_with(
                    DefectSet::from_scene(&scene),
                    &ClosureConfig {
                        max_gen: cfg.max_gen,
                        core: cfg.core(),
                        area_rows: DEFAULT_AREA_ROWS,
                    },
                );
                row.covering_generation = report.covering_generation;
                row.fixed_point_generation = report.fixed_point_generation;
                row.censored = report.covering_generation.is_none();
                row.area_curve = report.per_generation.iter().map(|g| g.covered_area_fraction).collect();
            } else {
                let (scene, origin) = with_origin_disk(&scene);
                let trace = grow_run(&scene, origin, &GrowthConfig::full(cfg.max_gen))?;
                let core = cfg.core();
                row.covering_generation = trace
                    .steps
                    .iter()
                    .position(|g| crate::closure::covers_rect(g, &core))
                    .map(|k| k as u32 + trace.first_k);
                row.fixed_point_generation = trace.stopped_at;
                row.censored = row.covering_generation.is_none();
            }
        }
        Experiment::Boxes => {
            let grid = box_coupling_run(lambda, &cfg.boxes, cfg.box_grid.0, cfg.box_grid.1, row.seed)?;
            row.holes = grid.holes;
            row.covering_generation = Some(grid.open_count() as u32);
            row.fixed_point_generation = Some(grid.largest_cluster as u32);
        }
        Experiment::Lattice => {
            let fw = triangular_lattice(cfg.lattice_n, lambda, row.seed)?;
            row.holes = fw.edges.len();
            row.covering_generation = is_spider_web(&fw)?.then_some(0);
        }
    }
    if cfg.timing {
        row.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(row)
}

/// Runs every `(λ, trial)` cell, in parallel when allowed; the row order and
/// contents do not depend on the thread count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<ResultTable, McError> {
    cfg.validate()?;
    let cells: Vec<(usize, usize)> = (0..cfg.lambdas.len())
        .flat_map(|li| (0..cfg.trials).map(move |t| (li, t)))
        .collect();
    let threads = cfg.effective_threads();
    let rows: Result<Vec<TrialRow>, McError> = if threads == 1 {
        cells.iter().map(|&(li, t)| run_trial(cfg, li, t)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| McError::Pool(e.to_string()))?;
        pool.install(|| cells.par_iter().map(|&(li, t)| run_trial(cfg, li, t)).collect())
    };
    Ok(ResultTable {
        experiment: cfg.experiment,
        rows: rows?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantile {
    Value(f64),
    /// No uncensored observation to report.
    Censored,
}

impl std::fmt::Display for Quantile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantile::Value(v) => write!(f, "{v}"),
            Quantile::Censored => f.write_str("censored"),
        }
    }
}

impl Quantile {
    pub fn value(self) -> Option<f64> {
        match self {
            Quantile::Value(v) => Some(v),
            Quantile::Censored => None,
        }
    }
}

/// Nearest-rank quantile of sorted values.
pub fn quantile(sorted: &[f64], q: f64) -> Quantile {
    if sorted.is_empty() {
        return Quantile::Censored;
    }
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    Quantile::Value(sorted[rank - 1])
}

#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub lambda: f64,
    pub trials: usize,
    pub uncensored: usize,
    pub skipped: usize,
    pub censored_fraction: f64,
    pub median: Quantile,
    pub p10: Quantile,
    pub p90: Quantile,
    /// Mean covered core fraction per generation, carrying each run's last
    /// value forward.
    pub mean_area: Vec<f64>,
}

/// Per-λ statistics of `covering_generation` over uncensored rows, in order
/// of first appearance.
pub fn summarize(table: &ResultTable) -> Vec<Aggregate> {
    let mut lambdas: Vec<f64> = Vec::new();
    for r in &table.rows {
        if !lambdas.contains(&r.lambda) {
            lambdas.push(r.lambda);
        }
    }
    lambdas
        .into_iter()
        .map(|lambda| {
            let rows: Vec<&TrialRow> = table.rows_for(lambda).collect();
            let mut vals: Vec<f64> = rows
                .iter()
                .filter(|r| !r.censored)
                .filter_map(|r| r.covering_generation.map(f64::from))
                .collect();
            vals.sort_by(f64::total_cmp);
            let len = rows.iter().map(|r| r.area_curve.len()).max().unwrap_or(0);
            let mean_area = (0..len)
                .map(|g| {
                    let mut sum = 0.0;
                    let mut n = 0usize;
                    for r in rows.iter().filter(|r| !r.area_curve.is_empty()) {
                        sum += r.area_curve[g.min(r.area_curve.len() - 1)];
                        n += 1;
                    }
                    sum / n as f64
                })
                .collect();
            Aggregate {
                lambda,
                trials: rows.len(),
                uncensored: vals.len(),
                skipped: rows.iter().filter(|r| r.skipped).count(),
                censored_fraction: 1.0 - vals.len() as f64 / rows.len() as f64,
                median: quantile(&vals, 0.5),
                p10: quantile(&vals, 0.1),
                p90: quantile(&vals, 0.9),
                mean_area,
            }
        })
        .collect()
}

pub fn aggregates_to_csv(aggs: &[Aggregate]) -> String {
    let mut out = format!("{AGGREGATES_CSV_HEADER}\n");
    for a in aggs {
        writeln!(
            out,
            "{},{},{},{:.6},{},{},{},{}",
            a.lambda, a.trials, a.uncensored, a.censored_fraction, a.skipped, a.median, a.p10, a.p90
        )
        .unwrap();
    }
    out
}

/// `lambda,generation,mean_covered_area_fraction` rows.
pub fn area_curves_to_csv(aggs: &[Aggregate]) -> String {
    let mut out = String::from("lambda,generation,mean_covered_area_fraction\n");
    for a in aggs {
        for (g, v) in a.mean_area.iter().enumerate() {
            writeln!(out, "{},{},{:.9}", a.lambda, g, v).unwrap();
        }
    }
    out
}

/// Scenes for increasing rates where each is the previous plus independent
/// extra holes, so the process at a higher rate sees a superset of holes.
pub fn coupled_scenes(
    window: Rect,
    pad: f64,
    lambdas: &[f64],
    dist: &ShapeDistribution,
    seed: u64,
) -> Result<Vec<Scene>, McError> {
    let mut out: Vec<Scene> = Vec::with_capacity(lambdas.len());
    for (j, &l) in lambdas.iter().enumerate() {
        let prev = if j == 0 { 0.0 } else { lambdas[j - 1] };
        if l <= prev {
            return Err(McError::Config("coupled rates must increase".into()));
        }
        let inc = sample_poisson_scene(window, pad, l - prev, dist, seed::mix(seed, j as u64))?;
        out.push(match out.last() {
            Some(s) => s.superpose(&inc),
            None => inc,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::closure_run;

    fn row(lambda: f64, cov: Option<u32>) -> TrialRow {
        TrialRow {
            lambda,
            trial: 0,
            seed: 0,
            covering_generation: cov,
            censored: cov.is_none(),
            skipped: false,
            fixed_point_generation: None,
            holes: 0,
            runtime_ms: None,
            area_curve: vec![],
        }
    }

    fn table(rows: Vec<TrialRow>) -> ResultTable {
        ResultTable {
            experiment: Experiment::Closure,
            rows,
        }
    }

    #[test]
    fn medians() {
        let a = summarize(&table(vec![row(1.0, Some(7))]));
        assert_eq!(a[0].median, Quantile::Value(7.0));
        let a = summarize(&table(vec![row(1.0, Some(3)), row(1.0, Some(7)), row(1.0, Some(5))]));
        assert_eq!(a[0].median, Quantile::Value(5.0));
        assert_eq!(a[0].p10, Quantile::Value(3.0));
        assert_eq!(a[0].p90, Quantile::Value(7.0));
        let a = summarize(&table(vec![row(0.1, None), row(0.1, None)]));
        assert_eq!(a[0].median, Quantile::Censored);
        assert_eq!(a[0].censored_fraction, 1.0);
        assert!(aggregates_to_csv(&a).contains(",censored,censored,censored"));
    }

    #[test]
    fn single_trial_matches_direct_run() {
        let cfg = SweepConfig::closure(vec![0.3], 12.0, 1, 20, 99);
        let t = run_sweep(&cfg).unwrap();
        assert_eq!(t.rows.len(), 1);
        let s = seed::trial_seed(99, 0, 0);
        let scene = sample_poisson_scene(Rect::square(12.0), 3.0, 0.3, &ShapeDistribution::FixedDisk(1.0), s).unwrap();
        let (rep, _) = closure_run(&scene, 20, &Rect::square(12.0));
        assert_eq!(t.rows[0].seed, s);
        assert_eq!(t.rows[0].covering_generation, rep.covering_generation);
        assert_eq!(t.rows[0].fixed_point_generation, rep.fixed_point_generation);
        assert_eq!(t.rows[0].holes, scene.holes.len());
    }

    #[test]
    fn deterministic_across_threads() {
        let mut cfg = SweepConfig::closure(vec![0.3, 1.0], 10.0, 4, 20, 5);
        cfg.threads = Some(1);
        let a = run_sweep(&cfg).unwrap().to_csv();
        cfg.threads = Some(3);
        let b = run_sweep(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with(RESULTS_CSV_HEADER));
        assert_eq!(a.lines().count(), 9);
    }

    #[test]
    fn hole_cap_skips() {
        let mut cfg = SweepConfig::closure(vec![1.0], 10.0, 2, 5, 1);
        cfg.hole_cap = 3;
        let t = run_sweep(&cfg).unwrap();
        assert!(t.rows.iter().all(|r| r.skipped && r.censored));
        assert!(t.to_csv().contains(",skipped,"));
        assert_eq!(summarize(&t)[0].skipped, 2);
    }

    #[test]
    fn bad_configs() {
        assert!(run_sweep(&SweepConfig::closure(vec![], 10.0, 1, 5, 1)).is_err());
        assert!(run_sweep(&SweepConfig::closure(vec![-1.0], 10.0, 1, 5, 1)).is_err());
        assert!(run_sweep(&SweepConfig::closure(vec![1.0], 10.0, 0, 5, 1)).is_err());
        let mut c = SweepConfig::closure(vec![1.0, 0.5], 10.0, 1, 5, 1);
        c.coupled = true;
        assert!(run_sweep(&c).is_err());
    }

    #[test]
    fn coupled_scenes_nest() {
        let s = coupled_scenes(Rect::square(10.0), 2.0, &[0.2, 0.5], &ShapeDistribution::FixedDisk(1.0), 3).unwrap();
        assert!(s[0].holes.len() <= s[1].holes.len());
        assert_eq!(s[0].holes[..], s[1].holes[..s[0].holes.len()]);
    }

    #[test]
    fn other_experiments_run() {
        for kind in [Experiment::Growth, Experiment::Lattice] {
            let mut cfg = SweepConfig::closure(vec![0.9], 8.0, 2, 10, 4);
            cfg.experiment = kind;
            cfg.lattice_n = 4;
            let t = run_sweep(&cfg).unwrap();
            assert_eq!(t.rows.len(), 2);
        }
    }
}
