//! Planar frameworks: equilibrium stresses, spider webs, Hooke energy and
//! bond-diluted triangular lattices.

use std::collections::HashSet;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point;
use crate::lp::{phase_one, LpError, PhaseOne, LP_TOL};
use crate::scene::to_exact_json;
use crate::seed;

#[derive(Debug, Error)]
pub enum StressError {
    #[error("invalid framework: {0}")]
    InvalidFramework(String),
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Vertices, edges and a pinned vertex subset.
#[derive(Debug, Clone, PartialEq)]
pub struct Framework {
    pub vertices: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
    pub pinned: Vec<bool>,
}

/// Edge scalars; positive values are tensions.
pub type Stress = Vec<f64>;

impl Framework {
    pub fn new(
        vertices: Vec<Point>,
        edges: Vec<(usize, usize)>,
        pinned: &[usize],
    ) -> Result<Self, StressError> {
        let n = vertices.len();
        let mut mask = vec![false; n];
        for &p in pinned {
            if p >= n {
                return Err(StressError::InvalidFramework(format!("pinned index {p} out of range")));
            }
            mask[p] = true;
        }
        let fw = Framework {
            vertices,
            edges,
            pinned: mask,
        };
        fw.validate()?;
        Ok(fw)
    }

    pub fn validate(&self) -> Result<(), StressError> {
        let n = self.vertices.len();
        if self.pinned.len() != n {
            return Err(StressError::Length {
                expected: n,
                got: self.pinned.len(),
            });
        }
        if let Some(i) = self.vertices.iter().position(|v| !v.is_finite()) {
            return Err(StressError::InvalidFramework(format!("vertex {i} is not finite")));
        }
        let mut seen = HashSet::new();
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            let bad = |m: &str| Err(StressError::InvalidFramework(format!("edge {k} ({i},{j}): {m}")));
            if i >= n || j >= n {
                return bad("index out of range");
            }
            if i == j {
                return bad("self-loop");
            }
            if self.vertices[i] == self.vertices[j] {
                return bad("coincident endpoints");
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return bad("duplicate edge");
            }
        }
        Ok(())
    }

    pub fn pinned_indices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.pinned[i]).collect()
    }

    pub fn edge_vector(&self, e: usize) -> Point {
        let (i, j) = self.edges[e];
        self.vertices[j] - self.vertices[i]
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.edge_vector(e).norm()
    }

    pub fn max_edge_length(&self) -> f64 {
        (0..self.edges.len()).map(|e| self.edge_length(e)).fold(0.0, f64::max)
    }

    /// Some edge touches an unpinned vertex, so equilibrium is a real constraint.
    pub fn is_nontrivial(&self) -> bool {
        self.edges.iter().any(|&(i, j)| !self.pinned[i] || !self.pinned[j])
    }

    pub fn degree(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    /// `(vertex, Σ s_ij (v_j − v_i))` for every unpinned vertex.
    pub per_vertex: Vec<(usize, Point)>,
    pub max_norm: f64,
}

impl Residual {
    /// `max_norm / (max |s| · max edge length)`; zero for a zero stress.
    pub fn relative(&self, fw: &Framework, s: &[f64]) -> f64 {
        let scale = s.iter().fold(0.0f64, |m, v| m.max(v.abs())) * fw.max_edge_length();
        if scale == 0.0 {
            self.max_norm
        } else {
            self.max_norm / scale
        }
    }
}

pub fn equilibrium_residual(fw: &Framework, s: &[f64]) -> Result<Residual, StressError> {
    if s.len() != fw.edges.len() {
        return Err(StressError::Length {
            expected: fw.edges.len(),
            got: s.len(),
        });
    }
    let mut acc = vec![Point::ORIGIN; fw.vertices.len()];
    for (e, &(i, j)) in fw.edges.iter().enumerate() {
        let d = fw.vertices[j] - fw.vertices[i];
        acc[i] = acc[i] + d * s[e];
        acc[j] = acc[j] - d * s[e];
    }
    let per_vertex: Vec<(usize, Point)> = (0..fw.vertices.len())
        .filter(|&i| !fw.pinned[i])
        .map(|i| (i, acc[i]))
        .collect();
    let max_norm = per_vertex.iter().map(|(_, r)| r.norm()).fold(0.0, f64::max);
    Ok(Residual {
        per_vertex,
        max_norm,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpiderWeb {
    /// Equilibrium stress with every entry ≥ 1.
    Feasible(Stress),
    /// Virtual velocities of the unpinned vertices: every edge is stretched
    /// to first order (`Σ_e u·d_e ≥ 0` per edge) while their total work on the
    /// unit tensions is negative.
    Infeasible { velocities: Vec<(usize, Point)> },
}

impl SpiderWeb {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SpiderWeb::Feasible(_))
    }
}

/// Looks for an equilibrium stress with `s_e ≥ 1` on every edge.
pub fn spider_web_lp(fw: &Framework) -> Result<SpiderWeb, StressError> {
    fw.validate()?;
    let free: Vec<usize> = (0..fw.vertices.len()).filter(|&i| !fw.pinned[i]).collect();
    let mut row_of = vec![usize::MAX; fw.vertices.len()];
    for (r, &v) in free.iter().enumerate() {
        row_of[v] = r;
    }
    let m = fw.edges.len();
    // s = 1 + t, t ≥ 0: Σ_e t_e d_e = −Σ_e d_e at each free vertex
    let mut n = vec![vec![0.0; m]; 2 * free.len()];
    let mut rhs = vec![0.0; 2 * free.len()];
    for (e, &(i, j)) in fw.edges.iter().enumerate() {
        let d = fw.vertices[j] - fw.vertices[i];
        for (v, d) in [(i, d), (j, -d)] {
            let r = row_of[v];
            if r != usize::MAX {
                n[2 * r][e] += d.x;
                n[2 * r + 1][e] += d.y;
                rhs[2 * r] -= d.x;
                rhs[2 * r + 1] -= d.y;
            }
        }
    }
    // drop rows of isolated free vertices
    let keep: Vec<usize> = (0..n.len()).filter(|&r| n[r].iter().any(|v| *v != 0.0)).collect();
    let n: Vec<Vec<f64>> = keep.iter().map(|&r| n[r].clone()).collect();
    let rhs: Vec<f64> = keep.iter().map(|&r| rhs[r]).collect();
    match phase_one(&n, &rhs)? {
        PhaseOne::Feasible { y } => Ok(SpiderWeb::Feasible(y.iter().map(|t| 1.0 + t.max(0.0)).collect())),
        PhaseOne::Infeasible { w } => {
            let mut vel = vec![Point::ORIGIN; free.len()];
            for (k, &r) in keep.iter().enumerate() {
                if r % 2 == 0 {
                    vel[r / 2].x = w[k];
                } else {
                    vel[r / 2].y = w[k];
                }
            }
            Ok(SpiderWeb::Infeasible {
                velocities: free.into_iter().zip(vel).collect(),
            })
        }
    }
}

/// Nontrivial and carries an all-positive equilibrium tension.
pub fn is_spider_web(fw: &Framework) -> Result<bool, StressError> {
    Ok(fw.is_nontrivial() && spider_web_lp(fw)?.is_feasible())
}

/// Equilibrium check with tolerance [`LP_TOL`] relative to the stress scale.
pub fn passes_equilibrium(fw: &Framework, s: &[f64]) -> Result<bool, StressError> {
    Ok(equilibrium_residual(fw, s)?.relative(fw, s) <= LP_TOL)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HookeNetwork {
    pub framework: Framework,
    pub rest_length: Vec<f64>,
    pub spring: Vec<f64>,
    pub present: Vec<bool>,
}

impl HookeNetwork {
    pub fn new(
        framework: Framework,
        rest_length: Vec<f64>,
        spring: Vec<f64>,
        present: Vec<bool>,
    ) -> Result<Self, StressError> {
        let m = framework.edges.len();
        for len in [rest_length.len(), spring.len(), present.len()] {
            if len != m {
                return Err(StressError::Length { expected: m, got: len });
            }
        }
        if rest_length.iter().chain(&spring).any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(StressError::InvalidFramework(
                "rest lengths and spring constants must be positive".into(),
            ));
        }
        Ok(HookeNetwork {
            framework,
            rest_length,
            spring,
            present,
        })
    }

    /// Every present bond at its current length in the framework geometry.
    pub fn relaxed(framework: Framework) -> Self {
        let m = framework.edges.len();
        let rest = (0..m).map(|e| framework.edge_length(e)).collect();
        HookeNetwork {
            framework,
            rest_length: rest,
            spring: vec![1.0; m],
            present: vec![true; m],
        }
    }
}

/// `½ Σ` over ordered pairs of `a n (l − l⁰)²`; each bond appears twice.
pub fn hooke_energy(net: &HookeNetwork, positions: &[Point]) -> Result<f64, StressError> {
    let n = net.framework.vertices.len();
    if positions.len() != n {
        return Err(StressError::Length {
            expected: n,
            got: positions.len(),
        });
    }
    let mut total = 0.0;
    for (e, &(i, j)) in net.framework.edges.iter().enumerate() {
        if !net.present[e] {
            continue;
        }
        for (a, b) in [(i, j), (j, i)] {
            let l = positions[a].dist(positions[b]);
            total += net.spring[e] * (l - net.rest_length[e]).powi(2);
        }
    }
    Ok(0.5 * total)
}

const LATTICE_DIRS: [(i64, i64); 3] = [(1, 0), (0, 1), (-1, 1)];

/// Lattice vertex `(i, j)` of the rhombic patch.
pub fn lattice_point(i: usize, j: usize) -> Point {
    Point::new(i as f64 + 0.5 * j as f64, j as f64 * 3f64.sqrt() / 2.0)
}

/// `n × n` rhombic patch of the triangular lattice with the boundary pinned.
/// Every candidate edge draws one uniform in a fixed order and is kept when
/// it falls below `p`, so patches with the same seed are nested in `p`.
/// Edges joining two boundary vertices are left out.
pub fn triangular_lattice(n: usize, p: f64, seed: u64) -> Result<Framework, StressError> {
    if n < 2 {
        return Err(StressError::InvalidFramework(format!("lattice size {n} < 2")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(StressError::InvalidFramework(format!("bond probability {p} not in [0,1]")));
    }
    let idx = |i: usize, j: usize| j * n + i;
    let boundary = |i: usize, j: usize| i == 0 || j == 0 || i == n - 1 || j == n - 1;
    let mut rng = seed::rng(seed);
    let mut vertices = Vec::with_capacity(n * n);
    let mut pinned = Vec::new();
    for j in 0..n {
        for i in 0..n {
            vertices.push(lattice_point(i, j));
            if boundary(i, j) {
                pinned.push(idx(i, j));
            }
        }
    }
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..n {
            for (di, dj) in LATTICE_DIRS {
                let (ti, tj) = (i as i64 + di, j as i64 + dj);
                if ti < 0 || tj < 0 || ti >= n as i64 || tj >= n as i64 {
                    continue;
                }
                let (ti, tj) = (ti as usize, tj as usize);
                let u: f64 = rng.gen();
                if u < p && !(boundary(i, j) && boundary(ti, tj)) {
                    edges.push((idx(i, j), idx(ti, tj)));
                }
            }
        }
    }
    Framework::new(vertices, edges, &pinned)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameworkFile {
    vertices: Vec<[f64; 2]>,
    edges: Vec<[usize; 2]>,
    pinned: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stress: Option<Vec<f64>>,
}

pub fn framework_to_string(fw: &Framework, stress: Option<&[f64]>) -> String {
    let file = FrameworkFile {
        vertices: fw.vertices.iter().map(|&v| v.into()).collect(),
        edges: fw.edges.iter().map(|&(i, j)| [i, j]).collect(),
        pinned: fw.pinned_indices(),
        stress: stress.map(<[f64]>::to_vec),
    };
    to_exact_json(&file)
}

pub fn framework_from_str(text: &str) -> Result<(Framework, Option<Stress>), StressError> {
    let file: FrameworkFile = serde_json::from_str(text)?;
    let fw = Framework::new(
        file.vertices.into_iter().map(Point::from).collect(),
        file.edges.into_iter().map(|[i, j]| (i, j)).collect(),
        &file.pinned,
    )?;
    if let Some(s) = &file.stress {
        if s.len() != fw.edges.len() {
            return Err(StressError::Length {
                expected: fw.edges.len(),
                got: s.len(),
            });
        }
    }
    Ok((fw, file.stress))
}

pub fn write_framework(
    path: impl AsRef<Path>,
    fw: &Framework,
    stress: Option<&[f64]>,
) -> Result<(), StressError> {
    std::fs::write(path, framework_to_string(fw, stress))?;
    Ok(())
}

pub fn read_framework(path: impl AsRef<Path>) -> Result<(Framework, Option<Stress>), StressError> {
    framework_from_str(&std::fs::read_to_string(path)?)
}
