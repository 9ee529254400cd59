//! The iterated defect process: k-clusters of intersecting defects are
//! replaced by their convex hulls until a fixed point or until one defect
//! covers the observation window.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use crate::geom::{convex_intersects, hull_of_polygons, ConvexPolygon, Point, Rect, GEO_TOL};
use crate::scene::Scene;

/// Scanline count used for covered-area accounting by [`closure_run`].
pub const DEFAULT_AREA_ROWS: usize = 256;

pub const REPORT_CSV_HEADER: &str =
    "seed,lambda,generation,defect_count,covered_area_fraction,covering_generation,fixed_point_generation";

#[derive(Debug, Clone, PartialEq)]
pub struct Defect {
    pub polygon: ConvexPolygon,
    /// Sorted ids of the generation-0 holes this defect absorbed.
    pub provenance: Vec<u64>,
}

/// Defects of one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectSet {
    pub generation: u32,
    pub defects: Vec<Defect>,
    /// Defects created at this generation. Two stale defects are known to be
    /// disjoint, so only pairs involving a fresh one need testing.
    fresh: Vec<bool>,
}

impl DefectSet {
    /// Generation 0 from polygons; provenance ids are the indices.
    pub fn from_polygons(polys: Vec<ConvexPolygon>) -> Self {
        let n = polys.len();
        DefectSet {
            generation: 0,
            defects: polys
                .into_iter()
                .enumerate()
                .map(|(i, polygon)| Defect {
                    polygon,
                    provenance: vec![i as u64],
                })
                .collect(),
            fresh: vec![true; n],
        }
    }

    /// Generation 0 of a scene, keyed by hole id.
    pub fn from_scene(scene: &Scene) -> Self {
        let n = scene.holes.len();
        DefectSet {
            generation: 0,
            defects: scene
                .holes
                .iter()
                .map(|h| Defect {
                    polygon: h.polygon(),
                    provenance: vec![h.id],
                })
                .collect(),
            fresh: vec![true; n],
        }
    }

    pub fn len(&self) -> usize {
        self.defects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn polygons(&self) -> Vec<ConvexPolygon> {
        self.defects.iter().map(|d| d.polygon.clone()).collect()
    }

    /// Some defect contains `p` (closed, tolerance [`GEO_TOL`]).
    pub fn covers_point(&self, p: Point) -> bool {
        self.defects.iter().any(|d| d.polygon.contains(p))
    }

    /// Some single defect contains the polygon `q`.
    pub fn contains_polygon(&self, q: &ConvexPolygon) -> bool {
        self.defects.iter().any(|d| d.polygon.contains_polygon(q))
    }
}

/// Cached bounds for the broad phase.
struct Bounds {
    bbox: Rect,
    center: Point,
    inner: f64,
    outer: f64,
}

impl Bounds {
    fn of(p: &ConvexPolygon) -> Self {
        let center = p.centroid();
        Bounds {
            bbox: p.bbox(),
            center,
            inner: p.inradius_about(center).max(0.0),
            outer: p.max_radius_about(center),
        }
    }
}

fn intersects(a: &ConvexPolygon, ba: &Bounds, b: &ConvexPolygon, bb: &Bounds) -> bool {
    if !ba.bbox.overlaps(&bb.bbox) {
        return false;
    }
    let d = ba.center.dist(bb.center);
    if d > ba.outer + bb.outer + GEO_TOL {
        return false;
    }
    if d < ba.inner + bb.inner {
        return true;
    }
    convex_intersects(a, b)
}

fn components(polys: &[&ConvexPolygon], fresh: &[bool]) -> Vec<Vec<usize>> {
    let n = polys.len();
    let bounds: Vec<Bounds> = polys.iter().map(|p| Bounds::of(p)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| bounds[a].bbox.xmin.total_cmp(&bounds[b].bbox.xmin));

    let mut uf = UnionFind::<usize>::new(n);
    // sweep and prune along x
    for (k, &i) in order.iter().enumerate() {
        let xmax = bounds[i].bbox.xmax + GEO_TOL;
        for &j in &order[k + 1..] {
            if bounds[j].bbox.xmin > xmax {
                break;
            }
            if !(fresh[i] || fresh[j]) || uf.equiv(i, j) {
                continue;
            }
            if intersects(polys[i], &bounds[i], polys[j], &bounds[j]) {
                uf.union(i, j);
            }
        }
    }

    let labels = uf.into_labeling();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = labels[i];
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
}

/// Connected components of the intersection graph. Each component is sorted,
/// components are ordered by their smallest index.
pub fn clusters(defects: &[ConvexPolygon]) -> Vec<Vec<usize>> {
    let refs: Vec<&ConvexPolygon> = defects.iter().collect();
    components(&refs, &vec![true; defects.len()])
}

/// One step of the process: each cluster becomes the hull of its members.
/// Singleton clusters are carried over unchanged.
pub fn next_generation(d: &DefectSet) -> DefectSet {
    let refs: Vec<&ConvexPolygon> = d.defects.iter().map(|x| &x.polygon).collect();
    let groups = components(&refs, &d.fresh);
    let mut defects = Vec::with_capacity(groups.len());
    let mut fresh = Vec::with_capacity(groups.len());
    for g in groups {
        if g.len() == 1 {
            defects.push(d.defects[g[0]].clone());
            fresh.push(false);
        } else {
            let polygon = hull_of_polygons(g.iter().map(|&i| &d.defects[i].polygon));
            let provenance: BTreeSet<u64> = g
                .iter()
                .flat_map(|&i| d.defects[i].provenance.iter().copied())
                .collect();
            defects.push(Defect {
                polygon,
                provenance: provenance.into_iter().collect(),
            });
            fresh.push(true);
        }
    }
    DefectSet {
        generation: d.generation + 1,
        defects,
        fresh,
    }
}

/// Iterates to the fixed point with no generation limit.
pub fn fixed_point(mut d: DefectSet) -> DefectSet {
    loop {
        let next = next_generation(&d);
        if next.len() == d.len() {
            return d;
        }
        d = next;
    }
}

/// Polygon contains the rectangle (corner test suffices by convexity).
pub fn covers_rect(p: &ConvexPolygon, r: &Rect) -> bool {
    r.corners().iter().all(|&c| p.contains(c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationStats {
    pub generation: u32,
    pub defect_count: usize,
    pub covered_area_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosureReport {
    pub per_generation: Vec<GenerationStats>,
    /// First generation with the core window inside a single defect.
    pub covering_generation: Option<u32>,
    /// First generation `k` with `next_generation` leaving the set unchanged.
    pub fixed_point_generation: Option<u32>,
}

impl ClosureReport {
    pub fn last_generation(&self) -> u32 {
        self.per_generation.last().map_or(0, |g| g.generation)
    }

    /// The run stopped at `max_gen` without covering or reaching a fixed point.
    pub fn censored(&self) -> bool {
        self.covering_generation.is_none() && self.fixed_point_generation.is_none()
    }

    /// One CSV row per generation; `None` fields are written empty.
    pub fn to_csv(&self, seed: u64, lambda: f64) -> String {
        let mut out = String::new();
        out.push_str(REPORT_CSV_HEADER);
        out.push('\n');
        let opt = |v: Option<u32>| v.map(|k| k.to_string()).unwrap_or_default();
        for g in &self.per_generation {
            writeln!(
                out,
                "{},{},{},{},{:.9},{},{}",
                seed,
                lambda,
                g.generation,
                g.defect_count,
                g.covered_area_fraction,
                opt(self.covering_generation),
                opt(self.fixed_point_generation)
            )
            .unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureConfig {
    pub max_gen: u32,
    pub core: Rect,
    /// Scanlines for the covered-area estimate; 0 skips area accounting.
    pub area_rows: usize,
}

/// Runs the process on a scene's holes (disks as 64-gons).
pub fn closure_run(scene: &Scene, max_gen: u32, core: &Rect) -> (ClosureReport, DefectSet) {
    closure_run_with(
        DefectSet::from_scene(scene),
        &ClosureConfig {
            max_gen,
            core: *core,
            area_rows: DEFAULT_AREA_ROWS,
        },
    )
}

/// Iterates until the core window is covered, a fixed point is reached, or
/// `max_gen` generations have been produced.
pub fn closure_run_with(initial: DefectSet, cfg: &ClosureConfig) -> (ClosureReport, DefectSet) {
    assert!(cfg.max_gen >= 1, "max_gen must be at least 1");
    let stats = |d: &DefectSet| GenerationStats {
        generation: d.generation,
        defect_count: d.len(),
        covered_area_fraction: if cfg.area_rows == 0 {
            f64::NAN
        } else {
            crate::geom::union_area_in_window(&d.polygons(), &cfg.core, cfg.area_rows)
                / cfg.core.area()
        },
    };
    let covering = |d: &DefectSet| d.defects.iter().any(|x| covers_rect(&x.polygon, &cfg.core));

    let mut cur = initial;
    let mut report = ClosureReport {
        per_generation: vec![stats(&cur)],
        covering_generation: None,
        fixed_point_generation: None,
    };
    if covering(&cur) {
        report.covering_generation = Some(cur.generation);
        return (report, cur);
    }
    while cur.generation < cfg.max_gen {
        let next = next_generation(&cur);
        if next.len() == cur.len() {
            report.fixed_point_generation = Some(cur.generation);
            break;
        }
        cur = next;
        report.per_generation.push(stats(&cur));
        if covering(&cur) {
            report.covering_generation = Some(cur.generation);
            break;
        }
    }
    (report, cur)
}
