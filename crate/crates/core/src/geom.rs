//! Planar geometry kernel.
//!
//! Conventions:
//! - Polygons are stored counterclockwise and strictly convex. Construction goes
//!   through [`convex_hull`] or [`ConvexPolygon::new`], both of which use the
//!   adaptive-precision orientation predicate from `robust`, so hull topology
//!   never depends on an epsilon.
//! - Metric predicates (containment, intersection, half-plane membership) are
//!   closed and use the absolute tolerance [`GEO_TOL`]. Boundary contact counts
//!   as intersection.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for containment and intersection tests.
pub const GEO_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyInput,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex sequence is not strictly convex and counterclockwise at index {0}")]
    NotConvex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Point at polar coordinates `(rho, phi)` around `center`.
    #[inline]
    pub fn polar(center: Point, rho: f64, phi: f64) -> Self {
        Point::new(center.x + rho * phi.cos(), center.y + rho * phi.sin())
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise rotation by 90 degrees.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn rotate(self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point::new(p[0], p[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Sign-exact orientation of the triple: positive when `a, b, c` turn left.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    )
}

/// Axis-aligned rectangle `[xmin, xmax] × [ymin, ymax]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Rect {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Rect {
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }

    /// `[0, side]²`.
    pub fn square(side: f64) -> Self {
        Rect::new(0.0, side, 0.0, side)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn is_valid(&self) -> bool {
        [self.xmin, self.xmax, self.ymin, self.ymax]
            .iter()
            .all(|v| v.is_finite())
            && self.xmax > self.xmin
            && self.ymax > self.ymin
    }

    pub fn inflate(&self, pad: f64) -> Rect {
        Rect::new(
            self.xmin - pad,
            self.xmax + pad,
            self.ymin - pad,
            self.ymax + pad,
        )
    }

    pub fn center(&self) -> Point {
        Point::new(
            0.5 * (self.xmin + self.xmax),
            0.5 * (self.ymin + self.ymax),
        )
    }

    /// Corners in counterclockwise order starting at `(xmin, ymin)`.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.xmin, self.ymin),
            Point::new(self.xmax, self.ymin),
            Point::new(self.xmax, self.ymax),
            Point::new(self.xmin, self.ymax),
        ]
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.xmin && p.x <= self.xmax && p.y >= self.ymin && p.y <= self.ymax
    }

    pub fn overlaps(&self, o: &Rect) -> bool {
        self.xmin <= o.xmax + GEO_TOL
            && o.xmin <= self.xmax + GEO_TOL
            && self.ymin <= o.ymax + GEO_TOL
            && o.ymin <= self.ymax + GEO_TOL
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.corners().to_vec(),
        }
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }
}

/// Strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Validates a vertex sequence. Every consecutive triple must turn left
    /// (exact predicate) and the sequence must wind exactly once.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        if !vertices.iter().all(|p| p.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if orient(a, b, c) <= 0.0 {
                return Err(GeomError::NotConvex((i + 1) % n));
            }
        }
        // left turns everywhere plus a positive fan from v0 rules out star polygons
        for i in 1..n - 1 {
            if orient(vertices[0], vertices[i], vertices[i + 1]) <= 0.0 {
                return Err(GeomError::NotConvex(i));
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn rect(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Self {
        Rect::new(xmin, xmax, ymin, ymax).to_polygon()
    }

    /// Regular `m`-gon with the given circumradius; first vertex at angle `phase`.
    pub fn regular(center: Point, circumradius: f64, m: usize, phase: f64) -> Self {
        assert!(m >= 3 && circumradius > 0.0);
        let vertices = (0..m)
            .map(|i| Point::polar(center, circumradius, phase + 2.0 * PI * i as f64 / m as f64))
            .collect();
        ConvexPolygon { vertices }
    }

    /// Regular `m`-gon circumscribed about the disk of radius `r` (apothem `r`),
    /// with edge midpoints at angles `2πi/m`.
    pub fn circumscribed(center: Point, r: f64, m: usize) -> Self {
        let big = r / (PI / m as f64).cos();
        Self::regular(center, big, m, PI / m as f64)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| a.cross(b)).sum::<f64>()
    }

    pub fn centroid(&self) -> Point {
        let o = self.vertices[0];
        let mut acc = Point::ORIGIN;
        let mut total = 0.0;
        for i in 1..self.vertices.len() - 1 {
            let a = self.vertices[i] - o;
            let b = self.vertices[i + 1] - o;
            let w = 0.5 * a.cross(b);
            acc = acc + (a + b) * (w / 3.0);
            total += w;
        }
        o + acc * (1.0 / total)
    }

    pub fn bbox(&self) -> Rect {
        let mut r = Rect::new(f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            r.xmin = r.xmin.min(p.x);
            r.xmax = r.xmax.max(p.x);
            r.ymin = r.ymin.min(p.y);
            r.ymax = r.ymax.max(p.y);
        }
        r
    }

    /// Closed containment with tolerance [`GEO_TOL`].
    pub fn contains(&self, q: Point) -> bool {
        self.edges().all(|(a, b)| {
            let e = b - a;
            e.cross(q - a) >= -GEO_TOL * e.norm()
        })
    }

    /// Every vertex of `other` lies in `self` (sufficient by convexity).
    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        // edge-major so each edge length is computed once
        self.edges().all(|(a, b)| {
            let e = b - a;
            let tol = -GEO_TOL * e.norm();
            other.vertices.iter().all(|&v| e.cross(v - a) >= tol)
        })
    }

    /// Smallest distance from `q` to the supporting lines of the edges, i.e. the
    /// radius of the largest disk around `q` inside the polygon. Negative when
    /// `q` lies outside.
    pub fn inradius_about(&self, q: Point) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let e = b - a;
                e.cross(q - a) / e.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest distance from `q` to a vertex.
    pub fn max_radius_about(&self, q: Point) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dist(q))
            .fold(0.0, f64::max)
    }

    pub fn translate(&self, t: Point) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Rotation by `theta` about the origin followed by translation by `t`.
    pub fn rigid_motion(&self, theta: f64, t: Point) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v.rotate(theta) + t).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> ConvexPolygon {
        assert!(c > 0.0);
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.dist(*b));
            }
        }
        d
    }

    /// Outward half-planes of the edges.
    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        self.edges()
            .map(|(a, b)| {
                let normal = Point::new(b.y - a.y, a.x - b.x);
                HalfPlane::new(normal, normal.dot(a))
            })
            .collect()
    }
}

/// Result of [`convex_hull`].
#[derive(Debug, Clone, PartialEq)]
pub enum Hull {
    Polygon(ConvexPolygon),
    /// All points collinear or coincident: the extreme points (one or two).
    Degenerate(Vec<Point>),
}

impl Hull {
    pub fn polygon(self) -> Option<ConvexPolygon> {
        match self {
            Hull::Polygon(p) => Some(p),
            Hull::Degenerate(_) => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Hull::Degenerate(_))
    }
}

/// Andrew's monotone chain with the exact orientation predicate. Collinear
/// boundary points are dropped, so the output is strictly convex.
pub fn convex_hull(points: &[Point]) -> Result<Hull, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    if !points.iter().all(|p| p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return Ok(Hull::Degenerate(pts));
    }

    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for &p in pts.iter() {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    if hull.len() < 3 {
        let first = pts[0];
        let last = pts[pts.len() - 1];
        return Ok(Hull::Degenerate(vec![first, last]));
    }
    Ok(Hull::Polygon(ConvexPolygon { vertices: hull }))
}

/// Hull of several polygons' vertex sets. Never degenerate for nonempty input.
pub fn hull_of_polygons<'a, I>(polys: I) -> ConvexPolygon
where
    I: IntoIterator<Item = &'a ConvexPolygon>,
{
    let pts: Vec<Point> = polys
        .into_iter()
        .flat_map(|p| p.vertices.iter().copied())
        .collect();
    match convex_hull(&pts) {
        Ok(Hull::Polygon(p)) => p,
        other => panic!("hull of valid polygons must be a polygon, got {other:?}"),
    }
}

/// Hull of the translates of `q` by every point of `points`, i.e. the
/// Minkowski sum of their hull with `q`. Only `O(h + |q|)` candidate points
/// are hulled instead of all `n·|q|` translated vertices.
pub fn minkowski_hull(points: &[Point], q: &ConvexPolygon) -> Result<ConvexPolygon, GeomError> {
    let candidates: Vec<Point> = match convex_hull(points)? {
        Hull::Degenerate(ps) => ps
            .iter()
            .flat_map(|&p| q.vertices.iter().map(move |&v| p + v))
            .collect(),
        Hull::Polygon(p) => {
            // every vertex of the sum maximizes some edge normal of P or Q, so
            // pair each edge's endpoints with the other side's maximizers
            let mut out = Vec::new();
            let mut pair = |edge_of: &ConvexPolygon, other: &ConvexPolygon| {
                let scale = other.vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
                for (a, b) in edge_of.edges() {
                    let n = -(b - a).perp();
                    let n = n * (1.0 / n.norm());
                    let best = other.vertices.iter().map(|v| n.dot(*v)).fold(f64::NEG_INFINITY, f64::max);
                    for &v in other.vertices.iter().filter(|v| n.dot(**v) >= best - 1e-12 * scale) {
                        out.push(a + v);
                        out.push(b + v);
                    }
                }
            };
            pair(&p, q);
            pair(q, &p);
            out
        }
    };
    match convex_hull(&candidates)? {
        Hull::Polygon(p) => Ok(p),
        Hull::Degenerate(v) => Err(GeomError::TooFewVertices(v.len())),
    }
}

/// Closed intersection test for convex polygons by separating axes; a gap of
/// more than [`GEO_TOL`] along some edge normal separates.
pub fn convex_intersects(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    if !p.bbox().overlaps(&q.bbox()) {
        return false;
    }
    !(separated_by_edges_of(p, q) || separated_by_edges_of(q, p))
}

fn separated_by_edges_of(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    p.edges().any(|(a, b)| {
        let e = b - a;
        let len = e.norm();
        // outward normal of a ccw edge is (e.y, -e.x); q is beyond the edge
        // when every vertex has a negative cross product
        q.vertices
            .iter()
            .all(|&w| e.cross(w - a) < -GEO_TOL * len)
    })
}

/// Closed half-plane `{p : normal·p ≤ offset}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub normal: Point,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: Point, offset: f64) -> Self {
        debug_assert!(normal.x != 0.0 || normal.y != 0.0, "half-plane normal must be nonzero");
        HalfPlane { normal, offset }
    }

    /// Signed distance, positive outside.
    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        (self.normal.dot(p) - self.offset) / self.normal.norm()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.signed_distance(p) <= GEO_TOL
    }
}

/// `window ∩ ⋂ hs`, or `None` when the intersection has no interior.
pub fn halfplane_intersection(hs: &[HalfPlane], window: &ConvexPolygon) -> Option<ConvexPolygon> {
    let mut poly: Vec<Point> = window.vertices.clone();
    for h in hs {
        poly = clip_against(&poly, h);
        if poly.len() < 3 {
            return None;
        }
    }
    polygon_from_cloud(&poly)
}

/// Intersection of two convex polygons.
pub fn intersect_convex(p: &ConvexPolygon, q: &ConvexPolygon) -> Option<ConvexPolygon> {
    if !p.bbox().overlaps(&q.bbox()) {
        return None;
    }
    halfplane_intersection(&q.halfplanes(), p)
}

fn clip_against(poly: &[Point], h: &HalfPlane) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let da = h.signed_distance(a);
        let db = h.signed_distance(b);
        if da <= 0.0 {
            out.push(a);
        }
        if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
            let t = da / (da - db);
            out.push(a + (b - a) * t);
        }
    }
    out
}

/// Canonical polygon from a point cloud produced by clipping: merges points
/// closer than a relative 1e-12, then takes the hull. `None` when degenerate
/// or of negligible area.
fn polygon_from_cloud(pts: &[Point]) -> Option<ConvexPolygon> {
    let scale = pts.iter().map(|p| p.x.abs().max(p.y.abs())).fold(1.0, f64::max);
    let merge = 1e-12 * scale;
    let mut kept: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts {
        if !kept.iter().any(|q| q.dist(p) <= merge) {
            kept.push(p);
        }
    }
    let poly = convex_hull(&kept).ok()?.polygon()?;
    if poly.area() <= GEO_TOL * GEO_TOL {
        return None;
    }
    Some(poly)
}

/// Chord `[x_lo, x_hi]` of a convex polygon on the horizontal line `y`.
pub fn horizontal_chord(p: &ConvexPolygon, y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (a, b) in p.edges() {
        if !((a.y <= y && y <= b.y) || (b.y <= y && y <= a.y)) {
            continue;
        }
        if a.y == b.y {
            lo = lo.min(a.x.min(b.x));
            hi = hi.max(a.x.max(b.x));
        } else {
            let x = a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Area of `window ∩ ⋃ polys`, integrated with `rows` horizontal scanlines
/// (midpoint rule in `y`, exact interval unions in `x`). Because the estimate
/// is computed row by row from exact chords, nested unions give nested
/// estimates.
pub fn union_area_in_window(polys: &[ConvexPolygon], window: &Rect, rows: usize) -> f64 {
    assert!(rows > 0);
    let h = window.height() / rows as f64;
    let mut buckets: Vec<Vec<(f64, f64)>> = vec![Vec::new(); rows];
    for p in polys {
        let bb = p.bbox();
        if !bb.overlaps(window) {
            continue;
        }
        let r0 = (((bb.ymin - window.ymin) / h) - 0.5).ceil().max(0.0) as usize;
        let r1f = ((bb.ymax - window.ymin) / h - 0.5).floor();
        if r1f < 0.0 {
            continue;
        }
        let r1 = (r1f as usize).min(rows - 1);
        for (r, bucket) in buckets.iter_mut().enumerate().take(r1 + 1).skip(r0) {
            let y = window.ymin + (r as f64 + 0.5) * h;
            if let Some((lo, hi)) = horizontal_chord(p, y) {
                let lo = lo.max(window.xmin);
                let hi = hi.min(window.xmax);
                if hi > lo {
                    bucket.push((lo, hi));
                }
            }
        }
    }
    let mut total = 0.0;
    for mut bucket in buckets {
        if bucket.is_empty() {
            continue;
        }
        bucket.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (mut cur_lo, mut cur_hi) = bucket[0];
        for &(lo, hi) in &bucket[1..] {
            if lo <= cur_hi {
                cur_hi = cur_hi.max(hi);
            } else {
                total += cur_hi - cur_lo;
                cur_lo = lo;
                cur_hi = hi;
            }
        }
        total += cur_hi - cur_lo;
    }
    total * h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn hull_drops_interior_point() {
        let h = convex_hull(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.2, 0.2)]))
            .unwrap()
            .polygon()
            .unwrap();
        assert_eq!(h.vertices(), &pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])[..]);
    }

    #[test]
    fn hull_of_segment_is_degenerate() {
        let h = convex_hull(&pts(&[(0.0, 0.0), (1.0, 1.0)])).unwrap();
        assert!(h.is_degenerate());
        let h = convex_hull(&pts(&[(0.0, 0.0), (2.0, 2.0), (1.0, 1.0)])).unwrap();
        assert_eq!(h, Hull::Degenerate(pts(&[(0.0, 0.0), (2.0, 2.0)])));
        let h = convex_hull(&pts(&[(3.0, 3.0)])).unwrap();
        assert_eq!(h, Hull::Degenerate(pts(&[(3.0, 3.0)])));
    }

    #[test]
    fn hull_rejects_empty() {
        assert_eq!(convex_hull(&[]), Err(GeomError::EmptyInput));
        assert_eq!(
            convex_hull(&[Point::new(f64::NAN, 0.0)]),
            Err(GeomError::NonFinite)
        );
    }

    #[test]
    fn hull_drops_collinear_boundary_points() {
        let h = convex_hull(&pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)]))
            .unwrap()
            .polygon()
            .unwrap();
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn polygon_validation() {
        assert!(ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).is_ok());
        // clockwise
        assert!(matches!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)])),
            Err(GeomError::NotConvex(_))
        ));
        // collinear triple
        assert!(ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0)])).is_err());
        // pentagram winds twice
        let star: Vec<Point> = (0..5)
            .map(|i| Point::polar(Point::ORIGIN, 1.0, 4.0 * PI * i as f64 / 5.0))
            .collect();
        assert!(ConvexPolygon::new(star).is_err());
        assert_eq!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0)])),
            Err(GeomError::TooFewVertices(2))
        );
    }

    #[test]
    fn squares_sharing_an_edge_intersect() {
        let a = ConvexPolygon::rect(0.0, 0.0, 1.0, 1.0);
        let b = ConvexPolygon::rect(1.0, 0.0, 2.0, 1.0);
        assert!(convex_intersects(&a, &b));
        assert!(convex_intersects(&b, &a));
    }

    #[test]
    fn separated_squares_do_not_intersect() {
        let a = ConvexPolygon::rect(0.0, 0.0, 1.0, 1.0);
        let b = ConvexPolygon::rect(2.0, 2.0, 3.0, 3.0);
        assert!(!convex_intersects(&a, &b));
    }

    #[test]
    fn corner_touch_counts() {
        let a = ConvexPolygon::rect(0.0, 0.0, 1.0, 1.0);
        let b = ConvexPolygon::rect(1.0, 1.0, 2.0, 2.0);
        assert!(convex_intersects(&a, &b));
        let c = ConvexPolygon::rect(1.0 + 1e-6, 1.0, 2.0, 2.0);
        assert!(!convex_intersects(&a, &c));
    }

    #[test]
    fn near_disks_intersect() {
        let a = ConvexPolygon::regular(Point::ORIGIN, 1.0, 32, 0.0);
        let b = ConvexPolygon::regular(Point::new(1.9, 0.0), 1.0, 32, 0.0);
        assert!(convex_intersects(&a, &b));
    }

    #[test]
    fn halfplane_examples() {
        let w = ConvexPolygon::rect(-1.0, -1.0, 1.0, 1.0);
        // x >= 0  <=>  -x <= 0
        let r = halfplane_intersection(&[HalfPlane::new(Point::new(-1.0, 0.0), 0.0)], &w).unwrap();
        assert!((r.area() - 2.0).abs() < 1e-12);
        assert_eq!(r.bbox(), Rect::new(0.0, 1.0, -1.0, 1.0));

        let w = ConvexPolygon::rect(0.0, 0.0, 1.0, 1.0);
        assert!(halfplane_intersection(&[HalfPlane::new(Point::new(-1.0, 0.0), -2.0)], &w).is_none());

        let w = ConvexPolygon::rect(-5.0, -5.0, 5.0, 5.0);
        let hs = [
            HalfPlane::new(Point::new(1.0, 1.0), 1.0),
            HalfPlane::new(Point::new(-1.0, 0.0), 0.0),
            HalfPlane::new(Point::new(0.0, -1.0), 0.0),
        ];
        let t = halfplane_intersection(&hs, &w).unwrap();
        assert_eq!(t.len(), 3);
        for v in pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]) {
            assert!(t.vertices().iter().any(|w| w.dist(v) < 1e-12));
        }
    }

    #[test]
    fn containment_and_area() {
        let sq = ConvexPolygon::rect(0.0, 0.0, 1.0, 1.0);
        assert!(sq.contains(Point::new(0.5, 0.5)));
        assert!(sq.contains(Point::new(1.0, 1.0)));
        assert!(!sq.contains(Point::new(1.0 + 1e-6, 0.5)));
        let t = ConvexPolygon::new(pts(&[(0.0, 0.0), (3.0, 0.0), (0.0, 3.0)])).unwrap();
        assert_eq!(t.area(), 4.5);
    }

    #[test]
    fn circumscribed_polygon_contains_disk() {
        let p = ConvexPolygon::circumscribed(Point::new(2.0, -1.0), 1.5, 64);
        assert!((p.inradius_about(Point::new(2.0, -1.0)) - 1.5).abs() < 1e-12);
        let sq = ConvexPolygon::circumscribed(Point::ORIGIN, 1.0, 4);
        let bb = sq.bbox();
        assert!((bb.xmax - 1.0).abs() < 1e-12 && (bb.ymin + 1.0).abs() < 1e-12);
    }

    #[test]
    fn union_area_of_overlapping_squares() {
        let a = ConvexPolygon::rect(0.0, 0.0, 2.0, 2.0);
        let b = ConvexPolygon::rect(1.0, 1.0, 3.0, 3.0);
        let w = Rect::new(-1.0, 4.0, -1.0, 4.0);
        let area = union_area_in_window(&[a, b], &w, 500);
        assert!((area - 7.0).abs() < 1e-9, "{area}");
        // clipped to a window
        let w = Rect::new(0.0, 1.0, 0.0, 1.0);
        let sq = ConvexPolygon::rect(-3.0, -3.0, 3.0, 3.0);
        assert!((union_area_in_window(&[sq], &w, 64) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn centroid_of_square() {
        let c = ConvexPolygon::rect(1.0, 1.0, 3.0, 5.0).centroid();
        assert!((c.x - 2.0).abs() < 1e-12 && (c.y - 3.0).abs() < 1e-12);
    }
}
