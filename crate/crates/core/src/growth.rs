//! Growth of a convex set around one hole by absorbing intersecting disks,
//! its ring-restricted variants, box openness and the site-percolation model
//! the boxes are coupled to.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use thiserror::Error;

use crate::geom::{
    convex_hull, convex_intersects, hull_of_polygons, minkowski_hull, ConvexPolygon, Hull, Point, Rect, GEO_TOL,
};
use crate::scene::{sample_poisson_scene, Scene, SceneError, ShapeDistribution, DISK_SIDES};
use crate::seed;

/// Inward margin used by [`disk_covered`].
pub const COVER_MARGIN: f64 = 1e-6;
pub const DEFAULT_COVER_SAMPLES: usize = 4096;

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error("hole {0} is not a unit disk of the scene")]
    BadOrigin(u64),
    #[error("invalid box configuration: {0}")]
    InvalidBox(String),
    #[error(transparent)]
    Scene(#[from] SceneError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthVariant {
    /// Every disk meeting the current set.
    Full,
    /// Step `k → k+1` uses centers with `k + 3/2 ≤ ρ ≤ k + 2`.
    Ring,
    /// Ring plus the color and angular filters.
    Restricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorFilter {
    Any,
    Green,
    Blue,
}

/// Checkerboard of cell 1/4: green when `⌊4x⌋ + ⌊4y⌋` is even.
pub fn is_green(p: Point) -> bool {
    ((4.0 * p.x).floor() + (4.0 * p.y).floor()).rem_euclid(2.0) == 0.0
}

impl ColorFilter {
    pub fn admits(self, p: Point) -> bool {
        match self {
            ColorFilter::Any => true,
            ColorFilter::Green => is_green(p),
            ColorFilter::Blue => !is_green(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthConfig {
    pub variant: GrowthVariant,
    pub color: ColorFilter,
    pub angular_exclusion: bool,
    pub k_max: u32,
}

impl GrowthConfig {
    pub fn full(k_max: u32) -> Self {
        GrowthConfig {
            variant: GrowthVariant::Full,
            color: ColorFilter::Any,
            angular_exclusion: false,
            k_max,
        }
    }

    pub fn ring(k_max: u32) -> Self {
        GrowthConfig {
            variant: GrowthVariant::Ring,
            ..Self::full(k_max)
        }
    }

    pub fn restricted(k_max: u32, color: ColorFilter) -> Self {
        GrowthConfig {
            variant: GrowthVariant::Restricted,
            color,
            angular_exclusion: true,
            k_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthTrace {
    pub origin: Point,
    /// Generation of `steps[0]`.
    pub first_k: u32,
    /// `G(first_k), G(first_k + 1), …`
    pub steps: Vec<ConvexPolygon>,
    /// `C(k+1) ⊆ G(k)` for each step.
    pub contains_next: Vec<bool>,
    /// First `k` after which the set can no longer change.
    pub stopped_at: Option<u32>,
}

impl GrowthTrace {
    pub fn last(&self) -> &ConvexPolygon {
        self.steps.last().expect("a trace has its seed")
    }

    /// `G(k)`, constant after the process stops.
    pub fn at(&self, k: u32) -> Option<&ConvexPolygon> {
        let i = k.checked_sub(self.first_k)? as usize;
        self.steps.get(i).or_else(|| self.stopped_at.map(|_| self.last()))
    }

    /// The flag held at every recorded step up to `k`.
    pub fn contains_through(&self, k: u32) -> bool {
        let n = (k.saturating_sub(self.first_k) + 1) as usize;
        self.contains_next.len() >= n && self.contains_next[..n].iter().all(|&b| b)
    }
}

/// Uniform bucket grid over hole centers.
pub struct HoleIndex<'a> {
    scene: &'a Scene,
    min: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
    /// Largest circumradius of a hole polygon.
    reach: f64,
    /// Common radius when every hole is a disk of the same size.
    uniform_disk: Option<f64>,
}

impl<'a> HoleIndex<'a> {
    pub fn new(scene: &'a Scene) -> Self {
        let w = scene.padded_window();
        let cell = 2.0;
        let nx = ((w.width() / cell).ceil() as usize).max(1);
        let ny = ((w.height() / cell).ceil() as usize).max(1);
        let mut buckets = vec![Vec::new(); nx * ny];
        let mut reach: f64 = 0.0;
        let min = Point::new(w.xmin, w.ymin);
        let mut uniform_disk = scene.holes.first().map(|h| h.shape.circumradius());
        for (k, h) in scene.holes.iter().enumerate() {
            let (ix, iy) = Self::cell_of(min, cell, nx, ny, h.center);
            buckets[iy * nx + ix].push(k as u32);
            let r = h.shape.circumradius();
            // disks become circumscribed polygons
            let r = if h.shape.is_disk() {
                r / (PI / DISK_SIDES as f64).cos()
            } else {
                r
            };
            reach = reach.max(r);
            if !h.shape.is_disk() || Some(h.shape.circumradius()) != uniform_disk {
                uniform_disk = None;
            }
        }
        HoleIndex {
            scene,
            min,
            cell,
            nx,
            ny,
            buckets,
            reach,
            uniform_disk,
        }
    }

    fn cell_of(min: Point, cell: f64, nx: usize, ny: usize, p: Point) -> (usize, usize) {
        let ix = (((p.x - min.x) / cell).floor().max(0.0) as usize).min(nx - 1);
        let iy = (((p.y - min.y) / cell).floor().max(0.0) as usize).min(ny - 1);
        (ix, iy)
    }

    pub fn scene(&self) -> &Scene {
        self.scene
    }

    /// Indices of holes whose centers lie in `r` (closed).
    pub fn centers_in(&self, r: &Rect) -> Vec<usize> {
        let (x0, y0) = Self::cell_of(self.min, self.cell, self.nx, self.ny, Point::new(r.xmin, r.ymin));
        let (x1, y1) = Self::cell_of(self.min, self.cell, self.nx, self.ny, Point::new(r.xmax, r.ymax));
        let mut out = Vec::new();
        for iy in y0..=y1 {
            for ix in x0..=x1 {
                for &k in &self.buckets[iy * self.nx + ix] {
                    if r.contains(self.scene.holes[k as usize].center) {
                        out.push(k as usize);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Holes with `lo ≤ |center − c| ≤ hi`, skipping buckets inside `lo`.
    pub fn centers_in_annulus(&self, c: Point, lo: f64, hi: f64) -> Vec<usize> {
        let (x0, y0) = Self::cell_of(self.min, self.cell, self.nx, self.ny, Point::new(c.x - hi, c.y - hi));
        let (x1, y1) = Self::cell_of(self.min, self.cell, self.nx, self.ny, Point::new(c.x + hi, c.y + hi));
        let mut out = Vec::new();
        for iy in y0..=y1 {
            let (ya, yb) = (self.min.y + iy as f64 * self.cell, self.min.y + (iy + 1) as f64 * self.cell);
            for ix in x0..=x1 {
                let (xa, xb) = (self.min.x + ix as f64 * self.cell, self.min.x + (ix + 1) as f64 * self.cell);
                let far = Point::new((c.x - xa).abs().max((c.x - xb).abs()), (c.y - ya).abs().max((c.y - yb).abs()));
                if far.norm() < lo {
                    continue;
                }
                for &k in &self.buckets[iy * self.nx + ix] {
                    let d = self.scene.holes[k as usize].center.dist(c);
                    if d >= lo && d <= hi {
                        out.push(k as usize);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn centers_within(&self, c: Point, radius: f64) -> Vec<usize> {
        let r = Rect::new(c.x - radius, c.x + radius, c.y - radius, c.y + radius);
        self.centers_in(&r)
            .into_iter()
            .filter(|&k| self.scene.holes[k].center.dist(c) <= radius)
            .collect()
    }
}

fn angle_excluded(phi: f64, k: u32) -> bool {
    if k == 0 {
        return false;
    }
    let eps = (k as f64).powf(-2.0 / 3.0);
    let d0 = phi.min(TAU - phi);
    d0 <= eps || (phi - PI).abs() <= eps
}

/// Grows from `seed` at generation `k_start` up to `k_end`.
///
/// When all holes are equal disks and `seed` is the hull of the disks at
/// `seed_centers`, every state is the hull of some centers plus one disk
/// polygon, which is much cheaper than hulling all disk vertices.
fn grow(
    index: &HoleIndex,
    seed: ConvexPolygon,
    seed_centers: &[Point],
    origin: Point,
    k_start: u32,
    k_end: u32,
    cfg: &GrowthConfig,
) -> GrowthTrace {
    let holes = &index.scene.holes;
    let contains = |g: &ConvexPolygon, k: u32| g.inradius_about(origin) >= (k + 1) as f64 - GEO_TOL;
    let mut trace = GrowthTrace {
        origin,
        first_k: k_start,
        contains_next: vec![contains(&seed, k_start)],
        steps: vec![seed],
        stopped_at: None,
    };
    let disk = index
        .uniform_disk
        .filter(|_| !seed_centers.is_empty())
        .map(|r| ConvexPolygon::circumscribed(Point::ORIGIN, r, DISK_SIDES));
    let mut centers: Vec<Point> = seed_centers.to_vec();
    for k in k_start..k_end {
        let g = trace.last().clone();
        let candidates = match cfg.variant {
            GrowthVariant::Full => index.centers_in(&g.bbox().inflate(index.reach)),
            GrowthVariant::Ring | GrowthVariant::Restricted => {
                let (lo, hi) = (k as f64 + 1.5, k as f64 + 2.0);
                index
                    .centers_in_annulus(origin, lo, hi)
                    .into_iter()
                    .filter(|&h| {
                        let d = holes[h].center - origin;
                        cfg.variant == GrowthVariant::Ring
                            || (cfg.color.admits(holes[h].center)
                                && !(cfg.angular_exclusion && angle_excluded(d.angle(), k)))
                    })
                    .collect()
            }
        };
        let planes: Vec<(Point, f64)> = g
            .halfplanes()
            .iter()
            .map(|hp| {
                let len = hp.normal.norm();
                (hp.normal * (1.0 / len), hp.offset / len)
            })
            .collect();
        let fresh: Vec<usize> = candidates
            .into_iter()
            .filter(|&h| {
                let hole = &holes[h];
                if !hole.shape.is_disk() {
                    return true;
                }
                // cheap decision for disks far outside or deep inside
                let r = hole.shape.circumradius() / (PI / DISK_SIDES as f64).cos();
                let d = planes
                    .iter()
                    .map(|&(n, off)| n.dot(hole.center) - off)
                    .fold(f64::NEG_INFINITY, f64::max);
                d <= r + GEO_TOL && d > -r - GEO_TOL
            })
            .filter(|&h| {
                let p = holes[h].polygon();
                convex_intersects(&p, &g) && !g.contains_polygon(&p)
            })
            .collect();
        if fresh.is_empty() {
            let settled = match cfg.variant {
                GrowthVariant::Full => true,
                // later rings start further out than anything the set can reach
                _ => g.max_radius_about(origin) + index.reach < k as f64 + 2.5,
            };
            if settled {
                trace.stopped_at = Some(k);
                break;
            }
        }
        let next = if fresh.is_empty() {
            g
        } else if let Some(q) = &disk {
            centers.extend(fresh.iter().map(|&h| holes[h].center));
            if let Ok(Hull::Polygon(h)) = convex_hull(&centers) {
                centers = h.vertices().to_vec();
            }
            minkowski_hull(&centers, q).expect("disk sums are polygons")
        } else {
            let polys: Vec<ConvexPolygon> = fresh.iter().map(|&h| holes[h].polygon()).collect();
            hull_of_polygons(std::iter::once(&g).chain(polys.iter()))
        };
        trace.contains_next.push(contains(&next, k + 1));
        trace.steps.push(next);
    }
    trace
}

/// Runs the growth process from the unit-disk hole `origin_id`.
pub fn grow_run(scene: &Scene, origin_id: u64, cfg: &GrowthConfig) -> Result<GrowthTrace, GrowthError> {
    let hole = scene
        .hole(origin_id)
        .filter(|h| h.is_unit_disk())
        .ok_or(GrowthError::BadOrigin(origin_id))?;
    let index = HoleIndex::new(scene);
    Ok(grow(&index, hole.polygon(), &[hole.center], hole.center, 0, cfg.k_max, cfg))
}

/// Same as [`grow_run`] with a prebuilt index.
pub fn grow_run_indexed(
    index: &HoleIndex,
    origin_id: u64,
    cfg: &GrowthConfig,
) -> Result<GrowthTrace, GrowthError> {
    let hole = index
        .scene
        .hole(origin_id)
        .filter(|h| h.is_unit_disk())
        .ok_or(GrowthError::BadOrigin(origin_id))?;
    Ok(grow(index, hole.polygon(), &[hole.center], hole.center, 0, cfg.k_max, cfg))
}

/// Number of ring sectors `⌈2π√(k+3)⌉`.
pub fn sector_count(k: u32) -> usize {
    (TAU * ((k + 3) as f64).sqrt()).ceil() as usize
}

pub fn sector_angle(k: u32) -> f64 {
    TAU / sector_count(k) as f64
}

/// Probability that every sector of the ring `k + 3/2 ≤ ρ ≤ k + 2` holds a
/// center of a rate-`λ` Poisson process.
pub fn ring_event_probability(lambda: f64, k: u32) -> f64 {
    let m = sector_count(k);
    let alpha = TAU / m as f64;
    (1.0 - (-lambda * alpha * (k as f64 + 1.75) / 2.0).exp()).powi(m as i32)
}

/// Poisson centers in the ring `k + 3/2 ≤ ρ ≤ k + 2` around the origin.
pub fn sample_ring_centers<R: Rng + ?Sized>(lambda: f64, k: u32, rng: &mut R) -> Vec<Point> {
    let (lo, hi) = (k as f64 + 1.5, k as f64 + 2.0);
    let mean = lambda * PI * (hi * hi - lo * lo);
    let n = Poisson::new(mean).map_or(0, |d| d.sample(rng) as usize);
    (0..n)
        .map(|_| {
            let r = (lo * lo + rng.gen::<f64>() * (hi * hi - lo * lo)).sqrt();
            Point::polar(Point::ORIGIN, r, rng.gen::<f64>() * TAU)
        })
        .collect()
}

/// Every sector `(iα, (i+1)α]` of the ring for step `k` contains a center.
pub fn ring_sectors_filled(centers: &[Point], origin: Point, k: u32) -> bool {
    let m = sector_count(k);
    let alpha = TAU / m as f64;
    let (lo, hi) = (k as f64 + 1.5, k as f64 + 2.0);
    let mut hit = vec![false; m];
    for &c in centers {
        let d = c - origin;
        let rho = d.norm();
        if rho < lo || rho > hi {
            continue;
        }
        let phi = d.angle();
        // half-open on the left
        let mut i = (phi / alpha).ceil() as usize;
        i = if i == 0 { m - 1 } else { (i - 1).min(m - 1) };
        hit[i] = true;
    }
    hit.into_iter().all(|b| b)
}

/// Distance from the origin to the segment `[b, c]`.
pub fn segment_origin_distance(b: Point, c: Point) -> f64 {
    let d = c - b;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return b.norm();
    }
    let t = (-b.dot(d) / len2).clamp(0.0, 1.0);
    (b + d * t).norm()
}

fn vogel_points(center: Point, radius: f64, samples: usize) -> Vec<Point> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let rim = (samples / 4).max(8);
    let inner = samples.saturating_sub(rim).max(1);
    let mut pts = Vec::with_capacity(inner + rim);
    for i in 0..inner {
        let r = radius * ((i as f64 + 0.5) / inner as f64).sqrt();
        pts.push(Point::polar(center, r, i as f64 * golden));
    }
    for i in 0..rim {
        pts.push(Point::polar(center, radius, TAU * i as f64 / rim as f64));
    }
    pts
}

/// The disk of radius `k0` at `center` is covered by holes whose centers
/// lie inside it, judged on `samples` quasi-uniform points.
pub fn disk_covered(index: &HoleIndex, center: Point, k0: f64, samples: usize) -> bool {
    disk_covered_within(index, center, k0, k0, samples)
}

fn centers_strictly_within(index: &HoleIndex, center: Point, radius: f64) -> Vec<usize> {
    let holes = &index.scene.holes;
    index
        .centers_within(center, radius)
        .into_iter()
        .filter(|&h| holes[h].center.dist(center) < radius)
        .collect()
}

/// Like [`disk_covered`], admitting holes centered within `reach` of `center`.
pub fn disk_covered_within(index: &HoleIndex, center: Point, k0: f64, reach: f64, samples: usize) -> bool {
    let holes = &index.scene.holes;
    let inside = centers_strictly_within(index, center, reach);
    if inside.is_empty() {
        return false;
    }
    let polys: Vec<Option<ConvexPolygon>> = inside
        .iter()
        .map(|&h| (!holes[h].shape.is_disk()).then(|| holes[h].polygon()))
        .collect();
    vogel_points(center, k0, samples).into_iter().all(|p| {
        inside.iter().zip(&polys).any(|(&h, poly)| match poly {
            None => holes[h].center.dist(p) <= holes[h].shape.circumradius() - COVER_MARGIN,
            Some(poly) => poly.contains(p),
        })
    })
}

/// Hull of the holes centered strictly inside the disk of radius `k0`.
pub fn covering_hull(index: &HoleIndex, center: Point, k0: f64) -> Option<ConvexPolygon> {
    let polys: Vec<ConvexPolygon> = centers_strictly_within(index, center, k0)
        .into_iter()
        .map(|h| index.scene.holes[h].polygon())
        .collect();
    (!polys.is_empty()).then(|| hull_of_polygons(&polys))
}

/// Parameters of the box construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxConfig {
    pub k0: u32,
    pub t: u32,
    pub cover_samples: usize,
}

impl BoxConfig {
    pub fn new(k0: u32, t: u32) -> Result<Self, GrowthError> {
        if k0 < 2 {
            return Err(GrowthError::InvalidBox(format!("k0 = {k0} must exceed 1")));
        }
        Ok(BoxConfig {
            k0,
            t,
            cover_samples: DEFAULT_COVER_SAMPLES,
        })
    }

    /// Box side `5 T k0³`.
    pub fn side(&self) -> f64 {
        5.0 * self.t as f64 * (self.k0 as f64).powi(3)
    }

    /// Target radius `⌈0.6 L⌉`.
    pub fn k1(&self) -> u32 {
        (0.6 * self.side()).ceil() as u32
    }

    /// `0.6 L` is below the distance from the candidate row to the corners.
    pub fn corner_margin_holds(&self) -> bool {
        let l = self.side();
        0.6 * l < ((0.5 * l).powi(2) + (0.4 * l).powi(2)).sqrt()
    }

    pub fn bounds(&self, i: i64, j: i64) -> Rect {
        let l = self.side();
        Rect::new(i as f64 * l, (i + 1) as f64 * l, j as f64 * l, (j + 1) as f64 * l)
    }

    /// Centers `(X_i + t k0³, Y_j)` for `t = 0..=T`.
    pub fn candidates(&self, i: i64, j: i64) -> Vec<Point> {
        let l = self.side();
        let step = (self.k0 as f64).powi(3);
        let (x, y) = ((i as f64 + 0.4) * l, (j as f64 + 0.5) * l);
        (0..=self.t).map(|t| Point::new(x + t as f64 * step, y)).collect()
    }

    /// Green boxes have `i + j` even.
    pub fn color(&self, i: i64, j: i64) -> ColorFilter {
        if (i + j).rem_euclid(2) == 0 {
            ColorFilter::Green
        } else {
            ColorFilter::Blue
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxOutcome {
    pub open: bool,
    /// First candidate meeting both conditions.
    pub candidate_index: Option<usize>,
    /// Some grown set contained a box corner.
    pub corner_reached: bool,
}

/// Evaluates box `(i, j)` on the scene behind `index`.
pub fn box_open(index: &HoleIndex, bcfg: &BoxConfig, i: i64, j: i64) -> BoxOutcome {
    let k0 = bcfg.k0;
    let k1 = bcfg.k1();
    let corners = bcfg.bounds(i, j).corners();
    let cfg = GrowthConfig::restricted(k1.saturating_sub(1), bcfg.color(i, j));
    let mut corner_reached = false;
    for (c, &a) in bcfg.candidates(i, j).iter().enumerate() {
        if !disk_covered(index, a, k0 as f64, bcfg.cover_samples) {
            continue;
        }
        // a covered C(k0) is the state G'(k0 - 1) ⊇ C(k0) of the invariant
        let inside = centers_strictly_within(index, a, k0 as f64);
        let Some(seed) = covering_hull(index, a, k0 as f64) else {
            continue;
        };
        let seed_centers: Vec<Point> = inside.iter().map(|&h| index.scene.holes[h].center).collect();
        let trace = grow(index, seed, &seed_centers, a, k0 - 1, k1.saturating_sub(1).max(k0 - 1), &cfg);
        let last = trace.last();
        corner_reached |= corners.iter().any(|&p| last.contains(p));
        if last.inradius_about(a) >= k1 as f64 - GEO_TOL {
            return BoxOutcome {
                open: true,
                candidate_index: Some(c),
                corner_reached,
            };
        }
    }
    BoxOutcome {
        open: false,
        candidate_index: None,
        corner_reached,
    }
}

/// Open/closed boxes on an `nx × ny` grid with 4-neighbor cluster data.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxGrid {
    pub nx: usize,
    pub ny: usize,
    /// Row-major by `j`, then `i`.
    pub open: Vec<bool>,
    pub candidate: Vec<Option<usize>>,
    pub corner_violations: usize,
    pub largest_cluster: usize,
    pub cluster_count: usize,
    /// Holes in the sampled scene.
    pub holes: usize,
}

impl BoxGrid {
    pub fn from_open(nx: usize, ny: usize, open: Vec<bool>) -> Self {
        assert_eq!(open.len(), nx * ny);
        let labels = site_clusters(&open, nx, ny);
        let (largest_cluster, cluster_count) = cluster_stats(&labels);
        BoxGrid {
            nx,
            ny,
            candidate: vec![None; open.len()],
            open,
            corner_violations: 0,
            largest_cluster,
            cluster_count,
            holes: 0,
        }
    }

    pub fn is_open(&self, i: usize, j: usize) -> bool {
        self.open[j * self.nx + i]
    }

    pub fn open_count(&self) -> usize {
        self.open.iter().filter(|&&b| b).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,open,candidate_index\n");
        for j in 0..self.ny {
            for i in 0..self.nx {
                let k = j * self.nx + i;
                let c = self.candidate[k].map(|c| c.to_string()).unwrap_or_default();
                writeln!(out, "{i},{j},{},{c}", self.open[k]).unwrap();
            }
        }
        out
    }
}

/// Samples one scene of unit disks over the grid and evaluates every box.
pub fn box_coupling_run(
    lambda: f64,
    bcfg: &BoxConfig,
    nx: usize,
    ny: usize,
    seed: u64,
) -> Result<BoxGrid, GrowthError> {
    if nx < 2 || ny < 2 {
        return Err(GrowthError::InvalidBox(format!("grid {nx}×{ny} is smaller than 2×2")));
    }
    let l = bcfg.side();
    let window = Rect::new(0.0, nx as f64 * l, 0.0, ny as f64 * l);
    let scene = sample_poisson_scene(window, 0.5 * l, lambda, &ShapeDistribution::FixedDisk(1.0), seed)?;
    let index = HoleIndex::new(&scene);
    let mut open = Vec::with_capacity(nx * ny);
    let mut candidate = Vec::with_capacity(nx * ny);
    let mut corner_violations = 0;
    for j in 0..ny {
        for i in 0..nx {
            let o = box_open(&index, bcfg, i as i64, j as i64);
            open.push(o.open);
            candidate.push(o.candidate_index);
            corner_violations += o.corner_reached as usize;
        }
    }
    let mut grid = BoxGrid::from_open(nx, ny, open);
    grid.candidate = candidate;
    grid.corner_violations = corner_violations;
    grid.holes = scene.holes.len();
    Ok(grid)
}

/// Independent open sites with probability `p`, row-major.
pub fn site_percolation(nx: usize, ny: usize, p: f64, seed: u64) -> Vec<bool> {
    let mut rng = seed::rng(seed);
    (0..nx * ny).map(|_| rng.gen::<f64>() < p).collect()
}

/// Cluster label per site (`usize::MAX` for closed sites), 4-neighbor adjacency.
pub fn site_clusters(open: &[bool], nx: usize, ny: usize) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let k = j * nx + i;
            if !open[k] {
                continue;
            }
            if i + 1 < nx && open[k + 1] {
                uf.union(k, k + 1);
            }
            if j + 1 < ny && open[k + nx] {
                uf.union(k, k + nx);
            }
        }
    }
    (0..nx * ny)
        .map(|k| if open[k] { uf.find(k) } else { usize::MAX })
        .collect()
}

fn cluster_stats(labels: &[usize]) -> (usize, usize) {
    let mut sizes = std::collections::HashMap::new();
    for &l in labels.iter().filter(|&&l| l != usize::MAX) {
        *sizes.entry(l).or_insert(0usize) += 1;
    }
    (sizes.values().copied().max().unwrap_or(0), sizes.len())
}

/// Some cluster touches both the bottom and the top row.
pub fn spans_vertically(open: &[bool], nx: usize, ny: usize) -> bool {
    let labels = site_clusters(open, nx, ny);
    let bottom: std::collections::HashSet<usize> =
        labels[..nx].iter().copied().filter(|&l| l != usize::MAX).collect();
    labels[(ny - 1) * nx..].iter().any(|l| bottom.contains(l))
}

/// Sites of the largest cluster as lattice points `(i, j)`.
pub fn largest_cluster_points(open: &[bool], nx: usize, ny: usize) -> Vec<Point> {
    let labels = site_clusters(open, nx, ny);
    let mut sizes = std::collections::HashMap::new();
    for &l in labels.iter().filter(|&&l| l != usize::MAX) {
        *sizes.entry(l).or_insert(0usize) += 1;
    }
    // ties go to the smallest label for determinism
    let Some(best) = sizes.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(l, _)| *l) else {
        return Vec::new();
    };
    (0..nx * ny)
        .filter(|&k| labels[k] == best)
        .map(|k| Point::new((k % nx) as f64, (k / nx) as f64))
        .collect()
}

/// Octant of `d` about the apex: cone `i` spans angles `[iπ/4, (i+1)π/4]`,
/// and a point on a shared boundary goes to the smaller index.
pub fn cone_index(d: Point) -> Option<usize> {
    let (x, y) = (d.x, d.y);
    if x == 0.0 && y == 0.0 {
        return None;
    }
    Some(if y >= 0.0 {
        if x > 0.0 && y <= x {
            0
        } else if x >= 0.0 || y > -x {
            // x ≥ 0 here means y > x
            if x >= 0.0 {
                1
            } else {
                2
            }
        } else if y == -x {
            2
        } else {
            3
        }
    } else if x < 0.0 && y >= x {
        4
    } else if x <= 0.0 {
        5
    } else if -y >= x {
        6
    } else {
        7
    })
}

/// For each of the eight cones about `apex`, whether some point falls in it.
pub fn cone_occupancy(points: &[Point], apex: Point) -> [bool; 8] {
    let mut occ = [false; 8];
    for &p in points {
        if let Some(i) = cone_index(p - apex) {
            occ[i] = true;
        }
    }
    occ
}

pub fn centroid_of(points: &[Point]) -> Point {
    let n = points.len().max(1) as f64;
    let s = points.iter().fold(Point::ORIGIN, |a, &p| a + p);
    s * (1.0 / n)
}
