//! Instance generators and brute-force oracles shared by the integration tests.
//! The oracles avoid the library's own predicates on purpose.

#![allow(dead_code)]

use membrane_perc::geom::{convex_hull, convex_intersects, ConvexPolygon, Point};
use membrane_perc::seed;
use rand::Rng;

/// Up to `n` pairwise disjoint random convex polygons with `vmin..=vmax`
/// vertices around centers in `[lo, hi]²`.
pub fn random_disjoint_holes(
    s: u64,
    n: usize,
    vmin: usize,
    vmax: usize,
    lo: f64,
    hi: f64,
    radius: (f64, f64),
) -> Vec<ConvexPolygon> {
    let mut rng = seed::rng(s);
    let mut holes: Vec<ConvexPolygon> = Vec::new();
    for _ in 0..200 {
        if holes.len() == n {
            break;
        }
        let c = Point::new(rng.gen_range(lo..hi), rng.gen_range(lo..hi));
        let m = rng.gen_range(vmin..=vmax);
        let pts: Vec<Point> = (0..m)
            .map(|_| Point::polar(c, rng.gen_range(radius.0..radius.1), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let Some(p) = convex_hull(&pts).ok().and_then(|h| h.polygon()) else {
            continue;
        };
        if p.area() < 1e-3 {
            continue;
        }
        if holes.iter().all(|q| !convex_intersects(q, &p)) {
            holes.push(p);
        }
    }
    holes
}

/// Instances of the Maxwell round trip: 2 to 10 holes of 3 to 6 vertices in
/// a 20×20 window.
pub fn random_feasible_candidate(s: u64) -> Vec<ConvexPolygon> {
    let mut rng = seed::rng(seed::mix(s, 77));
    let n = rng.gen_range(2..=10);
    random_disjoint_holes(s, n, 3, 6, 3.0, 17.0, (0.3, 1.2))
}

/// Cross product sign test: `q` is in the closed polygon (counterclockwise).
pub fn oracle_contains(p: &ConvexPolygon, q: Point, tol: f64) -> bool {
    let v = p.vertices();
    (0..v.len()).all(|i| {
        let a = v[i];
        let b = v[(i + 1) % v.len()];
        let e = Point::new(b.x - a.x, b.y - a.y);
        let w = Point::new(q.x - a.x, q.y - a.y);
        (e.x * w.y - e.y * w.x) >= -tol * (e.x.hypot(e.y))
    })
}

pub fn oracle_polygon_inside(outer: &ConvexPolygon, inner: &ConvexPolygon, tol: f64) -> bool {
    inner.vertices().iter().all(|&q| oracle_contains(outer, q, tol))
}

/// Separating-axis test over all edge normals of both polygons.
pub fn sat_intersects(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    let axes = p.vertices().iter().zip(p.vertices().iter().cycle().skip(1))
        .chain(q.vertices().iter().zip(q.vertices().iter().cycle().skip(1)))
        .map(|(a, b)| Point::new(b.y - a.y, a.x - b.x));
    for n in axes {
        let proj = |poly: &ConvexPolygon| {
            poly.vertices().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                let d = n.x * v.x + n.y * v.y;
                (lo.min(d), hi.max(d))
            })
        };
        let (a0, a1) = proj(p);
        let (b0, b1) = proj(q);
        if a1 < b0 || b1 < a0 {
            return false;
        }
    }
    true
}

/// Hull vertex set by the definition: a point is a vertex iff it is not in
/// the convex hull of the others (checked through all triangles).
pub fn brute_hull_vertices(pts: &[Point]) -> Vec<Point> {
    let in_tri = |q: Point, a: Point, b: Point, c: Point| {
        let s = |u: Point, v: Point, w: Point| (v.x - u.x) * (w.y - u.y) - (v.y - u.y) * (w.x - u.x);
        let (d1, d2, d3) = (s(a, b, q), s(b, c, q), s(c, a, q));
        let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
        let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
        !(neg && pos)
    };
    let mut out = Vec::new();
    'outer: for (i, &q) in pts.iter().enumerate() {
        if pts[..i].contains(&q) {
            continue;
        }
        let mut others: Vec<Point> = Vec::new();
        for &r in pts {
            if r != q && !others.contains(&r) {
                others.push(r);
            }
        }
        let area2 = |a: Point, b: Point, c: Point| (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        for a in 0..others.len() {
            for b in a + 1..others.len() {
                for c in b + 1..others.len() {
                    let (u, v, w) = (others[a], others[b], others[c]);
                    if area2(u, v, w) != 0.0 && in_tri(q, u, v, w) {
                        continue 'outer;
                    }
                }
            }
        }
        // also drop points in the middle of a segment between two others
        for a in 0..others.len() {
            for b in a + 1..others.len() {
                let (u, v) = (others[a], others[b]);
                let cross = (v.x - u.x) * (q.y - u.y) - (v.y - u.y) * (q.x - u.x);
                let dot = (q.x - u.x) * (v.x - u.x) + (q.y - u.y) * (v.y - u.y);
                let len2 = (v.x - u.x).powi(2) + (v.y - u.y).powi(2);
                if cross == 0.0 && dot > 0.0 && dot < len2 {
                    continue 'outer;
                }
            }
        }
        out.push(q);
    }
    out
}

/// Shoelace area, independent of the library's.
pub fn shoelace(v: &[Point]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| v[i].x * v[(i + 1) % n].y - v[(i + 1) % n].x * v[i].y).sum::<f64>().abs()
}

/// Pearson correlation.
pub fn correlation(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

/// Pearson χ² statistic of a 2×2 table against the product of its margins.
pub fn chi_square_2x2(t: [[f64; 2]; 2]) -> f64 {
    let n: f64 = t.iter().flatten().sum();
    let rows = [t[0][0] + t[0][1], t[1][0] + t[1][1]];
    let cols = [t[0][0] + t[1][0], t[0][1] + t[1][1]];
    let mut chi = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let e = rows[i] * cols[j] / n;
            chi += (t[i][j] - e).powi(2) / e;
        }
    }
    chi
}

/// 99th percentile of χ² with one degree of freedom.
pub const CHI2_1DOF_99: f64 = 6.634_896_601;
