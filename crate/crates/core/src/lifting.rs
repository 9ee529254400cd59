//! Convex liftings of hole systems.
//!
//! A system of disjoint convex holes leaves a complement that can carry
//! tension exactly when there are affine functions `l_i`, one per hole, with
//! `l_i > l_j` on hole `i` for every `j ≠ i`. Strictness is normalized to a
//! margin of 1 at the hole vertices, which gives a homogeneous LP. Feasible
//! systems yield a lifting, its upper-envelope subdivision and the induced
//! edge stresses; infeasible ones yield a Farkas certificate.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::closure::{fixed_point, DefectSet};
use crate::geom::{
    convex_intersects, halfplane_intersection, hull_of_polygons, intersect_convex, ConvexPolygon,
    HalfPlane, Point, Rect, GEO_TOL,
};
use crate::lp::{phase_one, Field, LpError, PhaseOne, LP_TOL};
use crate::scene::{CertificateRecord, MultiplierRecord, PlaneRecord};
use crate::stress::{Framework, Stress, StressError};

/// Exhaustive search guard for [`h_min_oracle`].
pub const MAX_ORACLE_VERTICES: usize = 14;
/// Systems with at most this many LP variables are verified in rationals.
pub const EXACT_VARIABLE_LIMIT: usize = 50;

#[derive(Debug, Error)]
pub enum LiftingError {
    #[error("hole system is empty")]
    Empty,
    #[error("lifting planes {0} and {1} coincide")]
    DegenerateLifting(usize, usize),
    #[error("gradient jump across framework edge {0} is not perpendicular to it")]
    InternalInconsistency(usize),
    #[error("{0} vertices exceed the exhaustive search limit of {MAX_ORACLE_VERTICES}")]
    TooLarge(usize),
    #[error("LP solution failed verification")]
    Numerical,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Stress(#[from] StressError),
}

/// Affine function `a·x + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub a: Point,
    pub b: f64,
}

impl Plane {
    pub const ZERO: Plane = Plane {
        a: Point::ORIGIN,
        b: 0.0,
    };

    pub fn eval(&self, p: Point) -> f64 {
        self.a.dot(p) + self.b
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lifting {
    /// One plane per hole; the first is identically zero.
    pub planes: Vec<Plane>,
    /// Smallest `l_i(v) − l_j(v)` over the constraint set.
    pub min_margin: f64,
    /// The solution was checked to satisfy every constraint in rationals.
    pub exact: bool,
}

impl Lifting {
    pub fn to_records(&self, ids: &[u64]) -> Vec<PlaneRecord> {
        self.planes
            .iter()
            .zip(ids)
            .map(|(p, &hole_id)| PlaneRecord {
                hole_id,
                a: p.a.into(),
                b: p.b,
            })
            .collect()
    }

    pub fn from_records(records: &[PlaneRecord]) -> Self {
        Lifting {
            planes: records
                .iter()
                .map(|r| Plane {
                    a: r.a.into(),
                    b: r.b,
                })
                .collect(),
            min_margin: f64::NAN,
            exact: false,
        }
    }
}

/// Constraint "hole `hole` is above hole `other` at its vertex `vertex`".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraint {
    pub hole: usize,
    pub vertex: usize,
    pub other: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multiplier {
    pub constraint: Constraint,
    pub weight: f64,
}

/// Nonnegative weights `y` on the constraints with `Aᵀy = 0` and `Σy = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub multipliers: Vec<Multiplier>,
    /// Sorted holes that occur in a positively weighted constraint.
    pub support: Vec<usize>,
    /// Exact rational weights, present when the certificate was verified.
    pub exact_weights: Option<Vec<BigRational>>,
}

impl Certificate {
    pub fn is_exact(&self) -> bool {
        self.exact_weights.is_some()
    }

    pub fn to_record(&self, ids: &[u64]) -> CertificateRecord {
        CertificateRecord {
            support: self.support.iter().map(|&h| ids[h]).collect(),
            exact: self.is_exact(),
            multipliers: self
                .multipliers
                .iter()
                .map(|m| MultiplierRecord {
                    hole: ids[m.constraint.hole],
                    vertex: m.constraint.vertex,
                    other: ids[m.constraint.other],
                    weight: m.weight,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Tension {
    Feasible(Lifting),
    Infeasible(Certificate),
}

impl Tension {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Tension::Feasible(_))
    }
}

pub fn constraints(holes: &[ConvexPolygon]) -> Vec<Constraint> {
    let mut out = Vec::new();
    for (i, h) in holes.iter().enumerate() {
        for vertex in 0..h.len() {
            for other in (0..holes.len()).filter(|&j| j != i) {
                out.push(Constraint {
                    hole: i,
                    vertex,
                    other,
                });
            }
        }
    }
    out
}

/// Sparse row of the primal system `A x ≥ 1`; hole 0 carries no variables.
fn primal_row(holes: &[ConvexPolygon], c: &Constraint) -> Vec<(usize, f64)> {
    let v = holes[c.hole].vertices()[c.vertex];
    let mut row = Vec::with_capacity(6);
    for (h, sign) in [(c.hole, 1.0), (c.other, -1.0)] {
        if h > 0 {
            let base = 3 * (h - 1);
            row.push((base, sign * v.x));
            row.push((base + 1, sign * v.y));
            row.push((base + 2, sign));
        }
    }
    row
}

/// Dual Phase-I data `[Aᵀ; 1ᵀ] y = (0, …, 0, 1)` on the chosen columns.
fn dual_system<T: Field>(
    holes: &[ConvexPolygon],
    cons: &[Constraint],
    cols: &[usize],
) -> (Vec<Vec<T>>, Vec<T>) {
    let nvars = 3 * (holes.len() - 1);
    let mut n = vec![vec![T::zero(); cols.len()]; nvars + 1];
    for (k, &c) in cols.iter().enumerate() {
        for (var, coef) in primal_row(holes, &cons[c]) {
            n[var][k] = T::from_f64(coef);
        }
        n[nvars][k] = T::one();
    }
    let mut e = vec![T::zero(); nvars + 1];
    e[nvars] = T::one();
    (n, e)
}

fn planes_from(x: &[f64], n: usize) -> Vec<Plane> {
    let mut planes = vec![Plane::ZERO];
    for h in 1..n {
        let b = 3 * (h - 1);
        planes.push(Plane {
            a: Point::new(x[b], x[b + 1]),
            b: x[b + 2],
        });
    }
    planes
}

/// `l_hole(v) − l_other(v)` for every constraint.
pub fn margins(holes: &[ConvexPolygon], planes: &[Plane]) -> Vec<f64> {
    constraints(holes)
        .iter()
        .map(|c| {
            let v = holes[c.hole].vertices()[c.vertex];
            planes[c.hole].eval(v) - planes[c.other].eval(v)
        })
        .collect()
}

fn exact_margins_positive(holes: &[ConvexPolygon], cons: &[Constraint], x: &[f64]) -> bool {
    let xr: Vec<BigRational> = x.iter().map(|&v| <BigRational as Field>::from_f64(v)).collect();
    cons.iter().all(|c| {
        let s = primal_row(holes, c)
            .into_iter()
            .fold(<BigRational as Zero>::zero(), |acc, (var, coef)| {
                acc + <BigRational as Field>::from_f64(coef) * xr[var].clone()
            });
        s.is_positive()
    })
}

/// Scales a strictly feasible direction to unit margin.
fn normalize(holes: &[ConvexPolygon], x: Vec<f64>, exact: bool) -> Option<Lifting> {
    let planes = planes_from(&x, holes.len());
    let min = margins(holes, &planes).into_iter().fold(f64::INFINITY, f64::min);
    if !(min > 0.0 && min.is_finite()) {
        return None;
    }
    let planes: Vec<Plane> = planes
        .into_iter()
        .map(|p| Plane {
            a: p.a * (1.0 / min),
            b: p.b / min,
        })
        .collect();
    let min_margin = margins(holes, &planes).into_iter().fold(f64::INFINITY, f64::min);
    Some(Lifting {
        planes,
        min_margin,
        exact,
    })
}

fn certificate(
    cons: &[Constraint],
    cols: &[usize],
    y: &[f64],
    exact: Option<Vec<BigRational>>,
) -> Certificate {
    let mut multipliers = Vec::new();
    let mut exact_full = exact.as_ref().map(|_| vec![<BigRational as Zero>::zero(); cons.len()]);
    for (k, &c) in cols.iter().enumerate() {
        if let (Some(full), Some(ex)) = (exact_full.as_mut(), exact.as_ref()) {
            full[c] = ex[k].clone();
        }
        if y[k] > 0.0 {
            multipliers.push(Multiplier {
                constraint: cons[c],
                weight: y[k],
            });
        }
    }
    let mut support: Vec<usize> = multipliers
        .iter()
        .flat_map(|m| [m.constraint.hole, m.constraint.other])
        .collect();
    support.sort_unstable();
    support.dedup();
    Certificate {
        multipliers,
        support,
        exact_weights: exact_full,
    }
}

fn solve_exact(holes: &[ConvexPolygon], cons: &[Constraint]) -> Result<Tension, LiftingError> {
    let cols: Vec<usize> = (0..cons.len()).collect();
    let (n, e) = dual_system::<BigRational>(holes, cons, &cols);
    match phase_one(&n, &e)? {
        PhaseOne::Feasible { y } => {
            let yf: Vec<f64> = y.iter().map(Field::to_f64).collect();
            Ok(Tension::Infeasible(certificate(cons, &cols, &yf, Some(y))))
        }
        PhaseOne::Infeasible { w } => {
            let t = w.last().cloned().ok_or(LiftingError::Numerical)?;
            let x: Vec<f64> = w[..w.len() - 1]
                .iter()
                .map(|u| Field::to_f64(&(-u.clone() / t.clone())))
                .collect();
            normalize(holes, x, true)
                .map(Tension::Feasible)
                .ok_or(LiftingError::Numerical)
        }
    }
}

/// Decides whether the hole system admits a convex lifting.
pub fn lifting_feasible(holes: &[ConvexPolygon]) -> Result<Tension, LiftingError> {
    match holes.len() {
        0 => return Err(LiftingError::Empty),
        1 => {
            return Ok(Tension::Feasible(Lifting {
                planes: vec![Plane::ZERO],
                min_margin: f64::INFINITY,
                exact: true,
            }))
        }
        _ => {}
    }
    let cons = constraints(holes);
    let small = 3 * (holes.len() - 1) <= EXACT_VARIABLE_LIMIT;
    let cols: Vec<usize> = (0..cons.len()).collect();
    let (n, e) = dual_system::<f64>(holes, &cons, &cols);
    match phase_one(&n, &e)? {
        PhaseOne::Feasible { y } => {
            if !small {
                return Ok(Tension::Infeasible(certificate(&cons, &cols, &y, None)));
            }
            let support: Vec<usize> = (0..cols.len()).filter(|&k| y[k] > 0.0).collect();
            let (ne, ee) = dual_system::<BigRational>(holes, &cons, &support);
            match phase_one(&ne, &ee)? {
                PhaseOne::Feasible { y } => {
                    let yf: Vec<f64> = y.iter().map(Field::to_f64).collect();
                    Ok(Tension::Infeasible(certificate(&cons, &support, &yf, Some(y))))
                }
                PhaseOne::Infeasible { .. } => solve_exact(holes, &cons),
            }
        }
        PhaseOne::Infeasible { w } => {
            let t = *w.last().expect("dual has a normalization row");
            let x: Vec<f64> = w[..w.len() - 1].iter().map(|u| -u / t).collect();
            let verified = t > 0.0 && (!small || exact_margins_positive(holes, &cons, &x));
            match normalize(holes, x, small).filter(|_| verified) {
                Some(l) => Ok(Tension::Feasible(l)),
                None if small => solve_exact(holes, &cons),
                None => Err(LiftingError::Numerical),
            }
        }
    }
}

/// `(max |Aᵀy|, Σ y)` for a certificate, in floating point.
pub fn certificate_residual(holes: &[ConvexPolygon], cert: &Certificate) -> (f64, f64) {
    let nvars = 3 * (holes.len() - 1);
    let mut acc = vec![0.0; nvars];
    let mut total = 0.0;
    for m in &cert.multipliers {
        for (var, coef) in primal_row(holes, &m.constraint) {
            acc[var] += coef * m.weight;
        }
        total += m.weight;
    }
    (acc.iter().fold(0.0f64, |a, v| a.max(v.abs())), total)
}

/// Rechecks exact weights: nonnegative, `Aᵀy = 0` and `Σ y > 0` in rationals.
pub fn verify_certificate_exact(holes: &[ConvexPolygon], cert: &Certificate) -> bool {
    let Some(w) = &cert.exact_weights else {
        return false;
    };
    let cons = constraints(holes);
    if w.len() != cons.len() || w.iter().any(Signed::is_negative) {
        return false;
    }
    let nvars = 3 * (holes.len() - 1);
    let mut acc = vec![<BigRational as Zero>::zero(); nvars];
    let mut total = <BigRational as Zero>::zero();
    for (c, y) in cons.iter().zip(w) {
        if y.is_zero() {
            continue;
        }
        for (var, coef) in primal_row(holes, c) {
            acc[var] = acc[var].clone() + <BigRational as Field>::from_f64(coef) * y.clone();
        }
        total += y.clone();
    }
    acc.iter().all(Zero::is_zero) && total.is_positive()
}

/// Cells of the upper envelope and their edge framework.
#[derive(Debug, Clone, PartialEq)]
pub struct Subdivision {
    /// `(hole index, cell)` for every nonempty cell.
    pub cells: Vec<(usize, ConvexPolygon)>,
    pub framework: Framework,
    /// The two cells on either side of each framework edge.
    pub edge_cells: Vec<(usize, usize)>,
    pub window: Rect,
}

fn on_window_side(w: &Rect, p: Point, q: Point, tol: f64) -> bool {
    let near = |a: f64, b: f64| (a - b).abs() <= tol;
    (near(p.x, w.xmin) && near(q.x, w.xmin))
        || (near(p.x, w.xmax) && near(q.x, w.xmax))
        || (near(p.y, w.ymin) && near(q.y, w.ymin))
        || (near(p.y, w.ymax) && near(q.y, w.ymax))
}

fn on_window_boundary(w: &Rect, p: Point, tol: f64) -> bool {
    (p.x - w.xmin).abs() <= tol
        || (p.x - w.xmax).abs() <= tol
        || (p.y - w.ymin).abs() <= tol
        || (p.y - w.ymax).abs() <= tol
}

/// Projects the upper envelope of the lifting onto the window.
pub fn envelope_subdivision(lifting: &Lifting, window: &Rect) -> Result<Subdivision, LiftingError> {
    let planes = &lifting.planes;
    let diam = window.diameter();
    let tol = GEO_TOL * diam.max(1.0);
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            let da = planes[j].a - planes[i].a;
            if da.norm() * diam + (planes[j].b - planes[i].b).abs() <= LP_TOL {
                return Err(LiftingError::DegenerateLifting(i, j));
            }
        }
    }

    let wpoly = window.to_polygon();
    let mut cells = Vec::new();
    for (i, pi) in planes.iter().enumerate() {
        // l_j ≤ l_i  ⇔  (a_j − a_i)·x ≤ b_i − b_j
        let hs: Vec<HalfPlane> = planes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, pj)| HalfPlane::new(pj.a - pi.a, pi.b - pj.b))
            .collect();
        if let Some(cell) = halfplane_intersection(&hs, &wpoly) {
            cells.push((i, cell));
        }
    }

    let mut pool: Vec<Point> = Vec::new();
    let intern = |p: Point, pool: &mut Vec<Point>| -> usize {
        match pool.iter().position(|q| q.dist(p) <= tol) {
            Some(k) => k,
            None => {
                pool.push(p);
                pool.len() - 1
            }
        }
    };
    for (_, c) in &cells {
        for &v in c.vertices() {
            intern(v, &mut pool);
        }
    }

    let mut edge_map: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (i, c) in &cells {
        for (p, q) in c.edges() {
            if on_window_side(window, p, q, tol) {
                continue;
            }
            let d = q - p;
            let len2 = d.dot(d);
            // vertices of neighboring cells lying inside this edge
            let mut stops: Vec<(f64, usize)> = pool
                .iter()
                .enumerate()
                .filter_map(|(k, &w)| {
                    let t = (w - p).dot(d) / len2;
                    let off = (w - p).cross(d).abs() / len2.sqrt();
                    (t > 0.0 && t < 1.0 && off <= tol).then_some((t, k))
                })
                .collect();
            stops.push((0.0, intern(p, &mut pool)));
            stops.push((1.0, intern(q, &mut pool)));
            stops.sort_by(|a, b| a.0.total_cmp(&b.0));
            stops.dedup_by_key(|s| s.1);
            for w in stops.windows(2) {
                let (u, v) = (w[0].1, w[1].1);
                if u == v {
                    continue;
                }
                let m = (pool[u] + pool[v]) * 0.5;
                let li = planes[*i].eval(m);
                let j = (0..planes.len())
                    .filter(|&j| j != *i)
                    .min_by(|&a, &b| {
                        (li - planes[a].eval(m)).total_cmp(&(li - planes[b].eval(m)))
                    })
                    .expect("at least two planes when a cell has an interior edge");
                let key = (u.min(v), u.max(v));
                if !edge_map.contains_key(&key) {
                    order.push(key);
                }
                edge_map.insert(key, ((*i).min(j), (*i).max(j)));
            }
        }
    }

    let pinned: Vec<usize> = (0..pool.len())
        .filter(|&k| on_window_boundary(window, pool[k], tol))
        .collect();
    let edge_cells = order.iter().map(|k| edge_map[k]).collect();
    let framework = Framework::new(pool, order, &pinned)?;
    Ok(Subdivision {
        cells,
        framework,
        edge_cells,
        window: *window,
    })
}

/// Stress `|a_j − a_i| / |q − p|` on every edge between cells `i` and `j`.
pub fn stresses_from_lifting(lifting: &Lifting, sub: &Subdivision) -> Result<Stress, LiftingError> {
    let diam = sub.window.diameter();
    let fw = &sub.framework;
    let mut s = Vec::with_capacity(fw.edges.len());
    for (e, &(i, j)) in sub.edge_cells.iter().enumerate() {
        let jump = lifting.planes[j].a - lifting.planes[i].a;
        let d = fw.edge_vector(e);
        if jump.dot(d).abs() > LP_TOL * jump.norm() * diam {
            return Err(LiftingError::InternalInconsistency(e));
        }
        s.push(jump.norm() / d.norm());
    }
    Ok(s)
}

/// Every polygon of `inner` lies inside some polygon of `outer`.
pub fn system_contains(outer: &[ConvexPolygon], inner: &[ConvexPolygon]) -> bool {
    inner.iter().all(|p| outer.iter().any(|q| q.contains_polygon(p)))
}

pub fn system_area(holes: &[ConvexPolygon]) -> f64 {
    holes.iter().map(ConvexPolygon::area).sum()
}

/// Enlarges the system until it supports tension: closure to a fixed point,
/// then merging of an irreducible infeasible subsystem, repeated.
pub fn h_min_approx(holes: &[ConvexPolygon]) -> Result<Vec<ConvexPolygon>, LiftingError> {
    if holes.is_empty() {
        return Ok(Vec::new());
    }
    let mut system = holes.to_vec();
    loop {
        system = fixed_point(DefectSet::from_polygons(system)).polygons();
        let cert = match lifting_feasible(&system)? {
            Tension::Feasible(_) => return Ok(system),
            Tension::Infeasible(c) => c,
        };
        // deletion filter over the certificate support
        let mut core = cert.support.clone();
        let mut k = 0;
        while k < core.len() {
            let trial: Vec<usize> = core.iter().copied().filter(|&h| h != core[k]).collect();
            let sub: Vec<ConvexPolygon> = trial.iter().map(|&h| system[h].clone()).collect();
            if sub.len() >= 2 && !lifting_feasible(&sub)?.is_feasible() {
                core = trial;
            } else {
                k += 1;
            }
        }
        let merged = hull_of_polygons(core.iter().map(|&h| &system[h]));
        let mut next: Vec<ConvexPolygon> = system
            .iter()
            .enumerate()
            .filter(|(h, _)| !core.contains(h))
            .map(|(_, p)| p.clone())
            .collect();
        next.push(merged);
        system = next;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    pub system: Vec<ConvexPolygon>,
    pub area: f64,
    /// Feasible candidate systems whose area ties the minimum.
    pub minimal_count: usize,
    pub candidates_checked: usize,
}

/// Calls `f` with every set partition of `0..n` as a block label vector.
fn for_each_partition(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, n: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            f(labels);
            return;
        }
        for b in 0..=max + 1 {
            labels.push(b);
            rec(labels, n, max.max(b), f);
            labels.pop();
        }
    }
    if n == 0 {
        f(&[]);
        return;
    }
    let mut labels = vec![0];
    rec(&mut labels, n, 0, f);
}

/// Minimal-area covering system that supports tension, by exhaustive search.
/// Every hole of such a system is the hull of the input holes it covers, so
/// candidates are indexed by set partitions of the input.
pub fn h_min_oracle(holes: &[ConvexPolygon]) -> Result<OracleOutcome, LiftingError> {
    let total: usize = holes.iter().map(ConvexPolygon::len).sum();
    if total > MAX_ORACLE_VERTICES {
        return Err(LiftingError::TooLarge(total));
    }
    if holes.is_empty() {
        return Ok(OracleOutcome {
            system: Vec::new(),
            area: 0.0,
            minimal_count: 1,
            candidates_checked: 1,
        });
    }
    let mut best: Option<(f64, Vec<ConvexPolygon>)> = None;
    let mut ties = 0usize;
    let mut checked = 0usize;
    let mut failure = None;
    for_each_partition(holes.len(), &mut |labels| {
        if failure.is_some() {
            return;
        }
        let blocks = labels.iter().max().map_or(0, |m| m + 1);
        let system: Vec<ConvexPolygon> = (0..blocks)
            .map(|b| {
                hull_of_polygons(
                    labels
                        .iter()
                        .zip(holes)
                        .filter(|(l, _)| **l == b)
                        .map(|(_, h)| h),
                )
            })
            .collect();
        for a in 0..system.len() {
            for b in a + 1..system.len() {
                if convex_intersects(&system[a], &system[b]) {
                    return;
                }
            }
        }
        checked += 1;
        match lifting_feasible(&system) {
            Ok(t) if t.is_feasible() => {}
            Ok(_) => return,
            Err(e) => {
                failure = Some(e);
                return;
            }
        }
        let area = system_area(&system);
        let scale = GEO_TOL * area.max(1.0);
        match &best {
            Some((a, _)) if area > a + scale => {}
            Some((a, _)) if (area - a).abs() <= scale => ties += 1,
            _ => {
                best = Some((area, system));
                ties = 1;
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    // the single all-absorbing hull always qualifies
    let (area, system) = best.expect("one-block partition is feasible");
    Ok(OracleOutcome {
        system,
        area,
        minimal_count: ties,
        candidates_checked: checked,
    })
}

/// All nonempty pairwise intersections of holes of the two systems.
pub fn mesh(h1: &[ConvexPolygon], h2: &[ConvexPolygon]) -> Vec<ConvexPolygon> {
    h1.iter()
        .flat_map(|p| h2.iter().filter_map(move |q| intersect_convex(p, q)))
        .collect()
}

/// Three thin triangles tangent to the unit circle at 120° steps. Seen from
/// the center each spans `atan(tip) + atan(arm)`, more than a third of the
/// turn for the defaults, so no three concurrent separators exist.
pub fn pinwheel(tip: f64, arm: f64, width: f64) -> Vec<ConvexPolygon> {
    (0..3)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            let n = Point::new(th.cos(), th.sin());
            let t = n.perp();
            let apex = n - t * tip;
            let b1 = n * (1.0 - width) + t * arm;
            let b2 = n * (1.0 + width) + t * arm;
            ConvexPolygon::new(vec![apex, b1, b2])
                .or_else(|_| ConvexPolygon::new(vec![apex, b2, b1]))
                .expect("pinwheel blade is a proper triangle")
        })
        .collect()
}

/// The default pinwheel blades.
pub fn default_pinwheel() -> Vec<ConvexPolygon> {
    pinwheel(1.4, 6.0, 0.3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x: f64, y: f64) -> ConvexPolygon {
        ConvexPolygon::rect(x, y, x + 1.0, y + 1.0)
    }

    #[test]
    fn single_hole_is_flat() {
        let Tension::Feasible(l) = lifting_feasible(&[sq(0.0, 0.0)]).unwrap() else {
            panic!()
        };
        assert_eq!(l.planes, vec![Plane::ZERO]);
    }

    #[test]
    fn two_separated_squares_lift_along_x() {
        let holes = [sq(0.0, 0.0), sq(2.0, 0.0)];
        let Tension::Feasible(l) = lifting_feasible(&holes).unwrap() else {
            panic!()
        };
        assert!(l.exact);
        assert!(l.min_margin >= 1.0 - LP_TOL);
        let jump = l.planes[1].a - l.planes[0].a;
        assert!(jump.x > 0.0);
        assert!(margins(&holes, &l.planes).iter().all(|m| *m >= 1.0 - LP_TOL));
    }

    #[test]
    fn pinwheel_blades_are_pairwise_separable_but_not_liftable() {
        let h = default_pinwheel();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(!convex_intersects(&h[i], &h[j]));
                assert!(lifting_feasible(&[h[i].clone(), h[j].clone()]).unwrap().is_feasible());
            }
        }
        let Tension::Infeasible(cert) = lifting_feasible(&h).unwrap() else {
            panic!("pinwheel must be infeasible")
        };
        assert_eq!(cert.support, vec![0, 1, 2]);
        assert!(verify_certificate_exact(&h, &cert));
        let (res, total) = certificate_residual(&h, &cert);
        assert!(res <= LP_TOL && (total - 1.0).abs() <= LP_TOL);
    }

    #[test]
    fn short_blades_are_liftable() {
        assert!(lifting_feasible(&pinwheel(0.3, 0.8, 0.2)).unwrap().is_feasible());
    }

    #[test]
    fn one_hole_subdivision_is_the_window() {
        let w = Rect::square(10.0);
        let l = Lifting {
            planes: vec![Plane::ZERO],
            min_margin: f64::INFINITY,
            exact: true,
        };
        let sub = envelope_subdivision(&l, &w).unwrap();
        assert_eq!(sub.cells.len(), 1);
        assert!((sub.cells[0].1.area() - 100.0).abs() < 1e-9);
        assert!(sub.framework.edges.is_empty());
        assert!(stresses_from_lifting(&l, &sub).unwrap().is_empty());
    }

    #[test]
    fn two_hole_bisector() {
        let holes = [sq(-2.0, -0.5), sq(1.0, -0.5)];
        let Tension::Feasible(l) = lifting_feasible(&holes).unwrap() else {
            panic!()
        };
        let w = Rect::new(-5.0, 5.0, -5.0, 5.0);
        let sub = envelope_subdivision(&l, &w).unwrap();
        assert_eq!(sub.cells.len(), 2);
        for (i, c) in &sub.cells {
            assert!(c.contains_polygon(&holes[*i]));
        }
        let s = stresses_from_lifting(&l, &sub).unwrap();
        assert_eq!(s.len(), 1);
        let jump = (l.planes[1].a - l.planes[0].a).norm();
        assert!((s[0] - jump / sub.framework.edge_length(0)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_lifting_is_rejected() {
        let l = Lifting {
            planes: vec![Plane::ZERO, Plane::ZERO],
            min_margin: 0.0,
            exact: false,
        };
        assert!(matches!(
            envelope_subdivision(&l, &Rect::square(1.0)),
            Err(LiftingError::DegenerateLifting(0, 1))
        ));
    }

    #[test]
    fn h_min_of_feasible_system_is_itself() {
        let holes = vec![sq(0.0, 0.0), sq(3.0, 0.0)];
        assert_eq!(h_min_approx(&holes).unwrap(), holes);
        let o = h_min_oracle(&holes).unwrap();
        assert_eq!(o.system, holes);
        assert_eq!(o.minimal_count, 1);
    }

    #[test]
    fn h_min_merges_pinwheel() {
        let h = default_pinwheel();
        let hull = hull_of_polygons(&h);
        assert_eq!(h_min_approx(&h).unwrap(), vec![hull.clone()]);
        let o = h_min_oracle(&h).unwrap();
        assert_eq!(o.system, vec![hull]);
    }

    #[test]
    fn oracle_size_guard() {
        let h: Vec<ConvexPolygon> = (0..4).map(|k| sq(3.0 * k as f64, 0.0)).collect();
        assert!(matches!(h_min_oracle(&h), Err(LiftingError::TooLarge(16))));
    }

    #[test]
    fn oracle_on_one_triangle() {
        let t = ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)]).unwrap();
        assert_eq!(h_min_oracle(&[t.clone()]).unwrap().system, vec![t]);
    }

    #[test]
    fn partitions_are_bell_numbers() {
        for (n, bell) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let mut c = 0;
            for_each_partition(n, &mut |_| c += 1);
            assert_eq!(c, bell);
        }
    }

    #[test]
    fn mesh_examples() {
        let a = ConvexPolygon::rect(0.0, 0.0, 2.0, 2.0);
        let b = ConvexPolygon::rect(1.0, 0.0, 3.0, 2.0);
        let m = mesh(&[a.clone()], &[b]);
        assert_eq!(m.len(), 1);
        assert!((m[0].area() - 2.0).abs() < 1e-12);
        assert!(m[0].bbox() == Rect::new(1.0, 2.0, 0.0, 2.0));
        let same = mesh(&[a.clone()], &[a.clone()]);
        assert!((same[0].area() - a.area()).abs() < 1e-12);
        assert!(mesh(&[a], &[sq(5.0, 5.0)]).is_empty());
    }
}
