//! Phase-I simplex for `{ N y = e, y ≥ 0 }` with Farkas certificates.
//! Pricing is Dantzig's rule with a lexicographic ratio test. In `f64` a
//! basis counts as feasible when its point solves `N y = e` to [`LP_TOL`]
//! relative to the magnitude of the terms.
//!
//! The solver is generic over the scalar field so the same pivoting code runs
//! in `f64` (tolerance [`LP_TOL`]) and in exact rationals. When the system is
//! infeasible the final reduced costs of the artificial columns give a vector
//! `w` with `Nᵀw ≤ 0` and `eᵀw > 0`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Feasibility tolerance for floating-point solves.
pub const LP_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("simplex iteration limit {0} reached")]
    IterationLimit(usize),
    #[error("matrix rows have inconsistent lengths")]
    Shape,
}

pub trait Field:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Arithmetic is exact, so feasibility is decided without tolerances.
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    /// `self > 0` beyond the field's tolerance.
    fn is_pos(&self) -> bool;
    /// `self < 0` beyond the field's tolerance.
    fn is_neg(&self) -> bool;
    fn lt(&self, other: &Self) -> bool;
    /// Exactly nonzero.
    fn nonzero(&self) -> bool;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Flushes roundoff-sized values to zero so degenerate ties stay ties.
    fn snap(self) -> Self {
        self
    }
    /// Pivot entry large enough relative to the column's largest entry.
    fn pivot_ok(&self, _colmax: f64) -> bool {
        true
    }
    /// Equal up to the field's tolerance.
    fn tie(&self, other: &Self) -> bool;
}

/// Tableau entries below this magnitude are treated as roundoff.
const SNAP_TOL: f64 = 1e-11;
/// Smallest admissible pivot relative to its column in floating point.
const PIVOT_REL_TOL: f64 = 1e-7;

impl Field for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_pos(&self) -> bool {
        *self > LP_TOL
    }
    fn is_neg(&self) -> bool {
        *self < -LP_TOL
    }
    fn lt(&self, other: &Self) -> bool {
        self < other
    }
    fn nonzero(&self) -> bool {
        *self != 0.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pivot_ok(&self, colmax: f64) -> bool {
        *self >= PIVOT_REL_TOL * colmax
    }
    fn tie(&self, other: &Self) -> bool {
        (self - other).abs() <= SNAP_TOL * self.abs().max(other.abs()).max(1.0)
    }
    fn snap(self) -> Self {
        if self.abs() < SNAP_TOL {
            0.0
        } else {
            self
        }
    }
}

impl Field for BigRational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn lt(&self, other: &Self) -> bool {
        self < other
    }
    fn nonzero(&self) -> bool {
        !self.is_zero()
    }
    /// Exact conversion of a finite double.
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite coefficient")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn tie(&self, other: &Self) -> bool {
        self == other
    }
}

/// Exact rational from an integer.
pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq)]
pub enum PhaseOne<T> {
    /// `y ≥ 0` with `N y = e`.
    Feasible { y: Vec<T> },
    /// `w` with `Nᵀw ≤ 0` and `eᵀw > 0` (within tolerance for `f64`).
    Infeasible { w: Vec<T> },
}

/// Dense Phase-I simplex. `n` is row-major with `rows × cols` entries.
pub fn phase_one<T: Field>(n: &[Vec<T>], e: &[T]) -> Result<PhaseOne<T>, LpError> {
    let rows = n.len();
    if e.len() != rows {
        return Err(LpError::Shape);
    }
    let cols = n.first().map_or(0, Vec::len);
    if n.iter().any(|r| r.len() != cols) {
        return Err(LpError::Shape);
    }
    if rows == 0 {
        return Ok(PhaseOne::Feasible {
            y: vec![T::zero(); cols],
        });
    }

    // tableau columns: [original | artificial | rhs]
    let width = cols + rows + 1;
    let rhs = width - 1;
    let mut sign = vec![false; rows];
    let mut tab: Vec<Vec<T>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let neg = e[i].lt(&T::zero());
        sign[i] = neg;
        let mut row = Vec::with_capacity(width);
        for v in &n[i] {
            row.push(if neg { -v.clone() } else { v.clone() });
        }
        for k in 0..rows {
            row.push(if k == i { T::one() } else { T::zero() });
        }
        row.push(if neg { -e[i].clone() } else { e[i].clone() });
        tab.push(row);
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    // reduced costs of min Σ artificials; obj[rhs] holds −objective
    let mut obj = vec![T::zero(); width];
    for row in &tab {
        for j in 0..cols {
            obj[j] = obj[j].clone() - row[j].clone();
        }
        obj[rhs] = obj[rhs].clone() - row[rhs].clone();
    }

    let max_iter = 50 * (rows + cols) + 1000;
    for _ in 0..max_iter {
        // Dantzig entering column
        let mut enter = None;
        for (j, d) in obj.iter().enumerate().take(cols) {
            if d.is_neg() && enter.is_none_or(|b: usize| d.lt(&obj[b])) {
                enter = Some(j);
            }
        }
        let Some(enter) = enter else {
            return Ok(finish(n, e, &tab, &obj, &basis, &sign));
        };
        let pr = leaving_row(&tab, enter, cols, rows, rhs)
            .expect("phase-one LP cannot be unbounded");
        pivot(&mut tab, &mut obj, pr, enter);
        basis[pr] = enter;
    }
    Err(LpError::IterationLimit(max_iter))
}

/// Lexicographic ratio test: minimum ratio, ties broken by the rows of
/// `B⁻¹` (the artificial block) scaled by the pivot entry. This never cycles.
fn leaving_row<T: Field>(tab: &[Vec<T>], enter: usize, cols: usize, rows: usize, rhs: usize) -> Option<usize> {
    let key = |i: usize, k: usize| -> T {
        let v = if k == 0 { &tab[i][rhs] } else { &tab[i][cols + k - 1] };
        v.clone() / tab[i][enter].clone()
    };
    let colmax = tab.iter().map(|r| r[enter].to_f64().abs()).fold(0.0, f64::max);
    let mut best: Option<usize> = None;
    for i in 0..tab.len() {
        if !tab[i][enter].is_pos() || !T::pivot_ok(&tab[i][enter], colmax) {
            continue;
        }
        let Some(b) = best else {
            best = Some(i);
            continue;
        };
        for k in 0..=rows {
            let (ki, kb) = (key(i, k), key(b, k));
            if ki.tie(&kb) {
                continue;
            }
            if ki.lt(&kb) {
                best = Some(i);
            }
            break;
        }
    }
    best
}

fn pivot<T: Field>(tab: &mut [Vec<T>], obj: &mut [T], pr: usize, pc: usize) {
    let p = tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v = v.clone() / p.clone();
    }
    let prow = tab[pr].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == pr {
            continue;
        }
        let f = row[pc].clone();
        if f.nonzero() {
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v = (v.clone() - f.clone() * pv.clone()).snap();
            }
        }
        // keep the pivot column exact
        row[pc] = T::zero();
    }
    let f = obj[pc].clone();
    for (v, pv) in obj.iter_mut().zip(&prow) {
        *v = (v.clone() - f.clone() * pv.clone()).snap();
    }
    obj[pc] = T::zero();
}

fn finish<T: Field>(
    n: &[Vec<T>],
    e: &[T],
    tab: &[Vec<T>],
    obj: &[T],
    basis: &[usize],
    sign: &[bool],
) -> PhaseOne<T> {
    let cols = n[0].len();
    let rhs = tab[0].len() - 1;
    let mut y = vec![T::zero(); cols];
    for (i, &b) in basis.iter().enumerate() {
        if b < cols && tab[i][rhs].is_pos() {
            y[b] = tab[i][rhs].clone();
        }
    }
    let feasible = if T::EXACT {
        !(-obj[rhs].clone()).is_pos()
    } else {
        // residual of the recovered point against the size of its terms
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for (row, ei) in n.iter().zip(e) {
            let (mut acc, mut mag) = (-ei.to_f64(), ei.to_f64().abs());
            for (a, yj) in row.iter().zip(&y) {
                let t = a.to_f64() * yj.to_f64();
                acc += t;
                mag += t.abs();
            }
            worst = worst.max(acc.abs());
            scale = scale.max(mag);
        }
        worst <= LP_TOL * scale
    };
    if feasible {
        return PhaseOne::Feasible { y };
    }
    let w = (0..sign.len())
        .map(|i| {
            let wi = T::one() - obj[cols + i].clone();
            if sign[i] {
                -wi
            } else {
                wi
            }
        })
        .collect();
    PhaseOne::Infeasible { w }
}

/// `max_i |(N y − e)_i|` in `f64`.
pub fn equality_residual(n: &[Vec<f64>], y: &[f64], e: &[f64]) -> f64 {
    n.iter()
        .zip(e)
        .map(|(row, ei)| (row.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() - ei).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasible_small_system() {
        // y0 + y1 = 2, y1 - y2 = 1
        let n = vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, -1.0]];
        let e = vec![2.0, 1.0];
        match phase_one(&n, &e).unwrap() {
            PhaseOne::Feasible { y } => {
                assert!(y.iter().all(|v| *v >= -LP_TOL));
                assert!(equality_residual(&n, &y, &e) < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_gives_farkas_vector() {
        // y0 + y1 = -1 with y ≥ 0 is infeasible
        let n = vec![vec![1.0, 1.0]];
        let e = vec![-1.0];
        match phase_one(&n, &e).unwrap() {
            PhaseOne::Infeasible { w } => {
                assert!(w[0] * 1.0 <= LP_TOL);
                assert!(-w[0] > LP_TOL);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exact_rational_matches_float() {
        let n: Vec<Vec<BigRational>> = vec![
            vec![rational(1), rational(-1), rational(0)],
            vec![rational(0), rational(1), rational(-1)],
            vec![rational(-1), rational(0), rational(1)],
        ];
        // sum of rows is 0 but rhs sums to 1: infeasible
        let e = vec![rational(1), rational(0), rational(0)];
        match phase_one(&n, &e).unwrap() {
            PhaseOne::Infeasible { w } => {
                for j in 0..3 {
                    let s: BigRational = (0..3).map(|i| n[i][j].clone() * w[i].clone()).sum();
                    assert!(!s.is_positive());
                }
                let be: BigRational = (0..3).map(|i| e[i].clone() * w[i].clone()).sum();
                assert!(be.is_positive());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        let n: Vec<Vec<f64>> = vec![];
        assert_eq!(phase_one(&n, &[]).unwrap(), PhaseOne::Feasible { y: vec![] });
    }
}
