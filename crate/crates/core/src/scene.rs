//! Hole models, Poisson scene generation, thinning and the scene file format.

use std::f64::consts::PI;
use std::fs;
use std::io;
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Exp, LogNormal, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{convex_hull, ConvexPolygon, GeomError, Point, Rect};
use crate::seed;

/// Sides of the regular polygon used whenever a disk hole enters polygon
/// geometry (closure, growth, liftings).
pub const DISK_SIDES: usize = 64;

/// Largest vertex count of a sampled random polygon.
pub const MAX_POLYGON_VERTICES: usize = 32;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("intensity must be positive, got {0}")]
    InvalidRate(f64),
    #[error("invalid window")]
    InvalidWindow,
    #[error("invalid hole shape: {0}")]
    InvalidShape(String),
    #[error("discretization with {0} sides is too coarse (need at least 8)")]
    TooCoarse(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Shape of a hole relative to its center.
#[derive(Debug, Clone, PartialEq)]
pub enum HoleShape {
    Disk { radius: f64 },
    /// Vertex offsets from the center; the center lies strictly inside.
    Polygon { offsets: ConvexPolygon },
}

impl HoleShape {
    pub fn disk(radius: f64) -> Result<Self, SceneError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(SceneError::InvalidShape(format!("disk radius {radius}")));
        }
        Ok(HoleShape::Disk { radius })
    }

    pub fn polygon(offsets: Vec<Point>) -> Result<Self, SceneError> {
        let poly = ConvexPolygon::new(offsets).map_err(|e| SceneError::InvalidShape(e.to_string()))?;
        if poly.inradius_about(Point::ORIGIN) <= 0.0 {
            return Err(SceneError::InvalidShape(
                "polygon does not contain its center".into(),
            ));
        }
        Ok(HoleShape::Polygon { offsets: poly })
    }

    /// `min_u f(u)`: radius of the largest disk about the center inside the hole.
    pub fn inscribed_radius(&self) -> f64 {
        match self {
            HoleShape::Disk { radius } => *radius,
            HoleShape::Polygon { offsets } => offsets.inradius_about(Point::ORIGIN),
        }
    }

    pub fn circumradius(&self) -> f64 {
        match self {
            HoleShape::Disk { radius } => *radius,
            HoleShape::Polygon { offsets } => offsets.max_radius_about(Point::ORIGIN),
        }
    }

    /// Polygon geometry of the hole placed at `center`. Disks become the
    /// circumscribed regular `sides`-gon.
    pub fn to_polygon(&self, center: Point, sides: usize) -> ConvexPolygon {
        match self {
            HoleShape::Disk { radius } => ConvexPolygon::circumscribed(center, *radius, sides),
            HoleShape::Polygon { offsets } => offsets.translate(center),
        }
    }

    pub fn is_disk(&self) -> bool {
        matches!(self, HoleShape::Disk { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hole {
    pub id: u64,
    pub center: Point,
    pub shape: HoleShape,
}

impl Hole {
    pub fn polygon(&self) -> ConvexPolygon {
        self.shape.to_polygon(self.center, DISK_SIDES)
    }

    pub fn is_unit_disk(&self) -> bool {
        matches!(self.shape, HoleShape::Disk { radius } if radius == 1.0)
    }
}

/// Law of a positive radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialLaw {
    Constant(f64),
    Uniform { lo: f64, hi: f64 },
    Exponential { mean: f64 },
    LogNormal { mu: f64, sigma: f64 },
}

impl RadialLaw {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let r = match *self {
                RadialLaw::Constant(r) => r,
                RadialLaw::Uniform { lo, hi } => rng.gen_range(lo..=hi),
                RadialLaw::Exponential { mean } => Exp::new(1.0 / mean).unwrap().sample(rng),
                RadialLaw::LogNormal { mu, sigma } => LogNormal::new(mu, sigma).unwrap().sample(rng),
            };
            if r > 0.0 {
                return r;
            }
        }
    }

    fn validate(&self) -> Result<(), SceneError> {
        let ok = match *self {
            RadialLaw::Constant(r) => r > 0.0 && r.is_finite(),
            RadialLaw::Uniform { lo, hi } => lo > 0.0 && hi >= lo && hi.is_finite(),
            RadialLaw::Exponential { mean } => mean > 0.0 && mean.is_finite(),
            RadialLaw::LogNormal { mu, sigma } => mu.is_finite() && sigma >= 0.0 && sigma.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(SceneError::InvalidShape(format!("bad radial law {self:?}")))
        }
    }
}

/// Law of the number of polygon vertices; samples are clamped to `3..=32`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VertexLaw {
    Fixed(usize),
    Uniform { lo: usize, hi: usize },
    /// `3 + Poisson(mean)`.
    ShiftedPoisson { mean: f64 },
}

impl VertexLaw {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let n = match *self {
            VertexLaw::Fixed(n) => n,
            VertexLaw::Uniform { lo, hi } => rng.gen_range(lo..=hi),
            VertexLaw::ShiftedPoisson { mean } => {
                if mean > 0.0 {
                    3 + Poisson::new(mean).unwrap().sample(rng) as usize
                } else {
                    3
                }
            }
        };
        n.clamp(3, MAX_POLYGON_VERTICES)
    }
}

/// Distribution of IID hole shapes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeDistribution {
    FixedDisk(f64),
    DiskRadius(RadialLaw),
    /// Convex hull of `n ~ vertices` points at sorted uniform angles with
    /// radii drawn from `radial`. Samples whose hull does not strictly contain
    /// the center are redrawn.
    RandomPolygon { vertices: VertexLaw, radial: RadialLaw },
}

impl ShapeDistribution {
    pub fn validate(&self) -> Result<(), SceneError> {
        match self {
            ShapeDistribution::FixedDisk(r) => RadialLaw::Constant(*r).validate(),
            ShapeDistribution::DiskRadius(law) => law.validate(),
            ShapeDistribution::RandomPolygon { radial, .. } => radial.validate(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> HoleShape {
        match self {
            ShapeDistribution::FixedDisk(r) => HoleShape::Disk { radius: *r },
            ShapeDistribution::DiskRadius(law) => HoleShape::Disk {
                radius: law.sample(rng),
            },
            ShapeDistribution::RandomPolygon { vertices, radial } => loop {
                let n = vertices.sample(rng);
                let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
                angles.sort_by(f64::total_cmp);
                let pts: Vec<Point> = angles
                    .iter()
                    .map(|&a| Point::polar(Point::ORIGIN, radial.sample(rng), a))
                    .collect();
                if let Ok(hull) = convex_hull(&pts) {
                    if let Some(poly) = hull.polygon() {
                        if poly.inradius_about(Point::ORIGIN) > 0.0 {
                            return HoleShape::Polygon { offsets: poly };
                        }
                    }
                }
            },
        }
    }
}

/// A finite window of the plane with the holes whose centers fall in the
/// padded window. Observables are evaluated on `window`; holes live on
/// `window.inflate(pad)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub window: Rect,
    pub pad: f64,
    pub lambda: f64,
    pub seed: u64,
    pub holes: Vec<Hole>,
}

impl Scene {
    /// Empty scene, e.g. for hand-built hole systems.
    pub fn empty(window: Rect, pad: f64) -> Self {
        Scene {
            window,
            pad,
            lambda: 1.0,
            seed: 0,
            holes: Vec::new(),
        }
    }

    /// Scene made of explicit polygons (ids `0..n`, centers at centroids).
    pub fn from_polygons(window: Rect, pad: f64, polys: &[ConvexPolygon]) -> Self {
        let holes = polys
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let c = p.centroid();
                Hole {
                    id: i as u64,
                    center: c,
                    shape: HoleShape::Polygon {
                        offsets: p.translate(-c),
                    },
                }
            })
            .collect();
        Scene {
            holes,
            ..Scene::empty(window, pad)
        }
    }

    pub fn padded_window(&self) -> Rect {
        self.window.inflate(self.pad)
    }

    /// Polygon geometry of every hole, in hole order.
    pub fn polygons(&self) -> Vec<ConvexPolygon> {
        self.holes.iter().map(Hole::polygon).collect()
    }

    pub fn hole(&self, id: u64) -> Option<&Hole> {
        self.holes.iter().find(|h| h.id == id)
    }

    /// Adds `extra`'s holes with fresh ids (superposition of point processes).
    pub fn superpose(&self, extra: &Scene) -> Scene {
        let next = self.holes.iter().map(|h| h.id + 1).max().unwrap_or(0);
        let mut out = self.clone();
        out.lambda = self.lambda + extra.lambda;
        out.holes.extend(extra.holes.iter().enumerate().map(|(k, h)| Hole {
            id: next + k as u64,
            ..h.clone()
        }));
        out
    }
}

/// Default padding: a quarter of the longer window side.
pub fn default_pad(window: &Rect) -> f64 {
    0.25 * window.width().max(window.height())
}

/// Poisson scene of intensity `lambda` on `window.inflate(pad)`: the hole count
/// is Poisson(λ·area), centers are uniform and shapes IID from `dist`,
/// independent of the centers. Deterministic in `seed`.
pub fn sample_poisson_scene(
    window: Rect,
    pad: f64,
    lambda: f64,
    dist: &ShapeDistribution,
    seed: u64,
) -> Result<Scene, SceneError> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(SceneError::InvalidRate(lambda));
    }
    if !window.is_valid() || !(pad >= 0.0 && pad.is_finite()) {
        return Err(SceneError::InvalidWindow);
    }
    dist.validate()?;
    let region = window.inflate(pad);
    // centers and shapes come from separate streams so the shape sequence does
    // not depend on how many uniforms the centers consumed
    let mut center_rng = seed::rng(seed::mix(seed, 0));
    let mut shape_rng = seed::rng(seed::mix(seed, 1));
    let count = Poisson::new(lambda * region.area())
        .map_err(|_| SceneError::InvalidRate(lambda))?
        .sample(&mut center_rng) as usize;
    let holes = (0..count)
        .map(|i| {
            let center = Point::new(
                center_rng.gen_range(region.xmin..region.xmax),
                center_rng.gen_range(region.ymin..region.ymax),
            );
            Hole {
                id: i as u64,
                center,
                shape: dist.sample(&mut shape_rng),
            }
        })
        .collect();
    Ok(Scene {
        window,
        pad,
        lambda,
        seed,
        holes,
    })
}

/// Keeps exactly the holes with inscribed radius `≥ r`.
pub fn thin_scene(scene: &Scene, r: f64) -> Scene {
    assert!(r > 0.0, "thinning radius must be positive");
    Scene {
        holes: scene
            .holes
            .iter()
            .filter(|h| h.shape.inscribed_radius() >= r)
            .cloned()
            .collect(),
        ..scene.clone()
    }
}

/// Replaces every disk by its circumscribed regular `m`-gon.
pub fn discretize(scene: &Scene, m: usize) -> Result<Scene, SceneError> {
    if m < 8 {
        return Err(SceneError::TooCoarse(m));
    }
    let holes = scene
        .holes
        .iter()
        .map(|h| match h.shape {
            HoleShape::Disk { radius } => Hole {
                shape: HoleShape::Polygon {
                    offsets: ConvexPolygon::circumscribed(Point::ORIGIN, radius, m),
                },
                ..h.clone()
            },
            HoleShape::Polygon { .. } => h.clone(),
        })
        .collect();
    Ok(Scene {
        holes,
        ..scene.clone()
    })
}

// ---------------------------------------------------------------------------
// File format

/// One affine piece `a·x + b` of a lifting, keyed by hole id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneRecord {
    pub hole_id: u64,
    pub a: [f64; 2],
    pub b: f64,
}

/// A Farkas multiplier on the constraint "hole `hole` dominates hole `other`
/// at its vertex `vertex`".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierRecord {
    pub hole: u64,
    pub vertex: usize,
    pub other: u64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub support: Vec<u64>,
    pub exact: bool,
    pub multipliers: Vec<MultiplierRecord>,
}

/// Optional sections that ride along with a scene.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SceneExtras {
    pub lifting: Option<Vec<PlaneRecord>>,
    pub certificate: Option<CertificateRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    window: Rect,
    pad: f64,
    lambda: f64,
    seed: u64,
    holes: Vec<HoleRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lifting: Option<Vec<PlaneRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateRecord>,
}

#[derive(Serialize, Deserialize)]
struct HoleRecord {
    id: u64,
    center: [f64; 2],
    #[serde(flatten)]
    kind: HoleKind,
}

/// Polygon vertices are stored as offsets from the hole center.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum HoleKind {
    Disk { radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

/// Pretty JSON whose floats are written with 17 significant digits.
struct ExactFloatFormatter<'a>(serde_json::ser::PrettyFormatter<'a>);

impl serde_json::ser::Formatter for ExactFloatFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes `value` as pretty JSON with round-trip-exact floats.
pub fn to_exact_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let fmt = ExactFloatFormatter(serde_json::ser::PrettyFormatter::with_indent(b"  "));
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits utf-8")
}

pub(crate) fn parse_error(e: serde_json::Error) -> SceneError {
    SceneError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn field_error(field: &str, message: impl Into<String>) -> SceneError {
    SceneError::Parse {
        line: 0,
        column: 0,
        message: format!("field `{field}`: {}", message.into()),
    }
}

pub fn scene_to_string(scene: &Scene, extras: &SceneExtras) -> String {
    let file = SceneFile {
        window: scene.window,
        pad: scene.pad,
        lambda: scene.lambda,
        seed: scene.seed,
        holes: scene
            .holes
            .iter()
            .map(|h| HoleRecord {
                id: h.id,
                center: h.center.into(),
                kind: match &h.shape {
                    HoleShape::Disk { radius } => HoleKind::Disk { radius: *radius },
                    HoleShape::Polygon { offsets } => HoleKind::Polygon {
                        vertices: offsets.vertices().iter().map(|&p| p.into()).collect(),
                    },
                },
            })
            .collect(),
        lifting: extras.lifting.clone(),
        certificate: extras.certificate.clone(),
    };
    to_exact_json(&file)
}

pub fn scene_from_str(text: &str) -> Result<(Scene, SceneExtras), SceneError> {
    let file: SceneFile = serde_json::from_str(text).map_err(parse_error)?;
    if !file.window.is_valid() {
        return Err(field_error("window", "needs finite xmin < xmax, ymin < ymax"));
    }
    if !(file.pad >= 0.0 && file.pad.is_finite()) {
        return Err(field_error("pad", "must be finite and non-negative"));
    }
    if !(file.lambda > 0.0 && file.lambda.is_finite()) {
        return Err(field_error("lambda", "must be positive"));
    }
    let region = file.window.inflate(file.pad);
    let mut holes = Vec::with_capacity(file.holes.len());
    for (k, rec) in file.holes.into_iter().enumerate() {
        let center = Point::from(rec.center);
        if !center.is_finite() || !region.contains(center) {
            return Err(field_error(
                &format!("holes[{k}].center"),
                "must lie in the padded window",
            ));
        }
        let shape = match rec.kind {
            HoleKind::Disk { radius } => HoleShape::disk(radius),
            HoleKind::Polygon { vertices } => {
                HoleShape::polygon(vertices.into_iter().map(Point::from).collect())
            }
        }
        .map_err(|e| field_error(&format!("holes[{k}]"), e.to_string()))?;
        holes.push(Hole {
            id: rec.id,
            center,
            shape,
        });
    }
    let scene = Scene {
        window: file.window,
        pad: file.pad,
        lambda: file.lambda,
        seed: file.seed,
        holes,
    };
    Ok((
        scene,
        SceneExtras {
            lifting: file.lifting,
            certificate: file.certificate,
        },
    ))
}

pub fn write_scene(scene: &Scene, path: impl AsRef<Path>) -> Result<(), SceneError> {
    write_scene_with(scene, &SceneExtras::default(), path)
}

pub fn write_scene_with(
    scene: &Scene,
    extras: &SceneExtras,
    path: impl AsRef<Path>,
) -> Result<(), SceneError> {
    fs::write(path, scene_to_string(scene, extras))?;
    Ok(())
}

pub fn read_scene(path: impl AsRef<Path>) -> Result<Scene, SceneError> {
    read_scene_with(path).map(|(s, _)| s)
}

pub fn read_scene_with(path: impl AsRef<Path>) -> Result<(Scene, SceneExtras), SceneError> {
    scene_from_str(&fs::read_to_string(path)?)
}

impl From<GeomError> for SceneError {
    fn from(e: GeomError) -> Self {
        SceneError::InvalidShape(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window10() -> Rect {
        Rect::square(10.0)
    }

    #[test]
    fn rejects_nonpositive_rate() {
        let d = ShapeDistribution::FixedDisk(1.0);
        assert!(matches!(
            sample_poisson_scene(window10(), 0.0, 0.0, &d, 1),
            Err(SceneError::InvalidRate(_))
        ));
        assert!(matches!(
            sample_poisson_scene(window10(), 0.0, -1.0, &d, 1),
            Err(SceneError::InvalidRate(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = ShapeDistribution::RandomPolygon {
            vertices: VertexLaw::Uniform { lo: 3, hi: 9 },
            radial: RadialLaw::Uniform { lo: 0.5, hi: 1.5 },
        };
        let a = sample_poisson_scene(window10(), 2.0, 0.3, &d, 99).unwrap();
        let b = sample_poisson_scene(window10(), 2.0, 0.3, &d, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_poisson_scene(window10(), 2.0, 0.3, &d, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn centers_lie_in_padded_window() {
        let d = ShapeDistribution::FixedDisk(1.0);
        let s = sample_poisson_scene(window10(), 2.5, 1.0, &d, 5).unwrap();
        let region = s.padded_window();
        assert!(s.holes.iter().all(|h| region.contains(h.center)));
        assert!(s
            .holes
            .iter()
            .all(|h| h.shape.inscribed_radius() == 1.0 && h.shape.circumradius() == 1.0));
    }

    #[test]
    fn random_polygons_are_valid_and_star_shaped() {
        let d = ShapeDistribution::RandomPolygon {
            vertices: VertexLaw::ShiftedPoisson { mean: 40.0 },
            radial: RadialLaw::Exponential { mean: 1.0 },
        };
        let mut rng = seed::rng(3);
        for _ in 0..500 {
            match d.sample(&mut rng) {
                HoleShape::Polygon { offsets } => {
                    assert!(offsets.len() >= 3 && offsets.len() <= MAX_POLYGON_VERTICES);
                    assert!(offsets.inradius_about(Point::ORIGIN) > 0.0);
                }
                HoleShape::Disk { .. } => unreachable!(),
            }
        }
    }

    #[test]
    fn thinning_fixed_disks_at_their_radius_is_identity() {
        let d = ShapeDistribution::FixedDisk(1.0);
        let s = sample_poisson_scene(window10(), 0.0, 0.5, &d, 8).unwrap();
        assert_eq!(thin_scene(&s, 1.0), s);
    }

    #[test]
    fn thinning_above_every_radius_empties_scene() {
        let d = ShapeDistribution::DiskRadius(RadialLaw::Uniform { lo: 0.2, hi: 0.8 });
        let s = sample_poisson_scene(window10(), 0.0, 0.5, &d, 8).unwrap();
        assert!(!s.holes.is_empty());
        assert!(thin_scene(&s, 0.81).holes.is_empty());
    }

    #[test]
    fn thinned_holes_are_a_subset() {
        let d = ShapeDistribution::DiskRadius(RadialLaw::Uniform { lo: 0.2, hi: 0.8 });
        let s = sample_poisson_scene(window10(), 1.0, 0.8, &d, 9).unwrap();
        let t = thin_scene(&s, 0.5);
        assert!(t.holes.iter().all(|h| s.holes.contains(h)));
        assert!(t.holes.len() < s.holes.len());
    }

    #[test]
    fn discretize_rejects_coarse_and_keeps_polygons() {
        let mut s = Scene::empty(window10(), 0.0);
        s.holes.push(Hole {
            id: 0,
            center: Point::new(5.0, 5.0),
            shape: HoleShape::disk(1.0).unwrap(),
        });
        let tri = HoleShape::polygon(vec![
            Point::new(-1.0, -1.0),
            Point::new(1.0, -1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        s.holes.push(Hole {
            id: 1,
            center: Point::new(2.0, 2.0),
            shape: tri.clone(),
        });
        assert!(matches!(discretize(&s, 4), Err(SceneError::TooCoarse(4))));
        let d = discretize(&s, 8).unwrap();
        assert_eq!(d.holes[1].shape, tri);
        let HoleShape::Polygon { offsets } = &d.holes[0].shape else {
            panic!("disk not discretized")
        };
        assert_eq!(offsets.len(), 8);
        assert!((offsets.inradius_about(Point::ORIGIN) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circumscribed_32gon_area_excess_is_small() {
        // closed form: m tan(π/m) − π
        let m = 32.0_f64;
        let excess = m * (PI / m).tan() - PI;
        let poly = ConvexPolygon::circumscribed(Point::ORIGIN, 1.0, 32);
        assert!((poly.area() - PI - excess).abs() < 1e-12);
        assert!(excess / PI < 0.02);
    }

    #[test]
    fn file_round_trip_is_bit_exact() {
        let d = ShapeDistribution::RandomPolygon {
            vertices: VertexLaw::Uniform { lo: 3, hi: 7 },
            radial: RadialLaw::LogNormal { mu: 0.0, sigma: 0.5 },
        };
        let mut s = sample_poisson_scene(window10(), 1.5, 0.4, &d, 1234).unwrap();
        s.holes.push(Hole {
            id: 10_000,
            center: Point::new(0.1, 0.2),
            shape: HoleShape::disk(0.7).unwrap(),
        });
        let text = scene_to_string(&s, &SceneExtras::default());
        let (back, extras) = scene_from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(extras, SceneExtras::default());
    }

    #[test]
    fn floats_are_written_with_17_digits() {
        let text = to_exact_json(&[0.1_f64]);
        assert!(text.contains("1.0000000000000001e-1"), "{text}");
    }

    #[test]
    fn missing_window_is_a_parse_error() {
        let text = r#"{"pad": 0.0, "lambda": 1.0, "seed": 0, "holes": []}"#;
        match scene_from_str(text) {
            Err(SceneError::Parse { message, .. }) => assert!(message.contains("window"), "{message}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_value_reports_line() {
        let text = "{\n  \"window\": {\"xmin\": 0, \"xmax\": 1, \"ymin\": 0, \"ymax\": 1},\n  \"pad\": \"wide\"\n}";
        match scene_from_str(text) {
            Err(SceneError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn hand_written_two_hole_scene() {
        let text = r#"{
          "window": {"xmin": 0, "xmax": 10, "ymin": 0, "ymax": 10},
          "pad": 0, "lambda": 0.02, "seed": 7,
          "holes": [
            {"id": 0, "center": [2, 2], "kind": "disk", "radius": 1},
            {"id": 1, "center": [7, 7], "kind": "polygon",
             "vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]]}
          ]
        }"#;
        let (s, _) = scene_from_str(text).unwrap();
        assert_eq!(s.holes.len(), 2);
        assert!(s.holes[0].is_unit_disk());
        assert!((s.holes[1].polygon().area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn center_outside_window_rejected() {
        let text = r#"{"window": {"xmin": 0, "xmax": 1, "ymin": 0, "ymax": 1},
          "pad": 0, "lambda": 1, "seed": 0,
          "holes": [{"id": 0, "center": [5, 5], "kind": "disk", "radius": 1}]}"#;
        assert!(matches!(scene_from_str(text), Err(SceneError::Parse { .. })));
    }
}
