//! Direct numerical integration of `(log∘f)^*ϖ` and `(arg∘f)^*ϖ` over the
//! upper half-plane.
//!
//! Every puncture sits in an exclusion square. Inside a square the integral
//! is taken in polar coordinates around the puncture over `r ≥ ρ`, where the
//! integrand is smooth, and the missing disk is removed by Richardson
//! extrapolation in `ρ`. The rest of the truncated box is tiled by a grid
//! whose lines include the square edges. All cells are refined adaptively
//! with tensor Gauss-Legendre rules of order 8.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::geometry::{mobius_finite_chart, Alpha, GeometryError, ParametrizedCurve};
use crate::lattice::TwoForm;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("tolerance not reached: estimate {estimate} for value {value} after {cells} cells")]
    ToleranceNotReached { value: f64, estimate: f64, cells: usize },
    #[error("integrand evaluated at a puncture")]
    EvaluationAtPuncture,
    #[error("invalid quadrature configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Halvings of ρ tried beyond `richardson_levels` before giving up.
const MAX_EXTRA_LEVELS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AreaKind {
    Log,
    Arg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Target absolute error in units of π².
    pub tol: f64,
    /// Initial exclusion radius around each puncture (capped at a quarter
    /// of the puncture's square).
    pub puncture_radius: f64,
    pub richardson_levels: usize,
    /// Half-width of the integration box; `None` for `10³·(max |λ| + 1)`.
    pub truncation_radius: Option<f64>,
    /// Cap on adaptive cells per integration pass.
    pub max_cells: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tol: 1e-4,
            puncture_radius: 0.05,
            richardson_levels: 3,
            truncation_radius: None,
            max_cells: 200_000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.tol > 0.0) {
            return Err(QuadratureError::Config("tol must be positive".into()));
        }
        if !(self.puncture_radius > 0.0) {
            return Err(QuadratureError::Config("puncture_radius must be positive".into()));
        }
        if self.richardson_levels < 2 {
            return Err(QuadratureError::Config("richardson_levels must be at least 2".into()));
        }
        if self.max_cells == 0 {
            return Err(QuadratureError::Config("max_cells must be positive".into()));
        }
        if let Some(r) = self.truncation_radius {
            if !(r > 0.0) {
                return Err(QuadratureError::Config("truncation_radius must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Logarithmic poles `n·log|y − c|` of the curve, conjugates of complex
/// punctures included.
#[derive(Debug, Clone)]
struct Poles {
    centers: Vec<Complex64>,
    weights: Vec<Vec<f64>>,
    omega: Vec<Vec<f64>>,
    kind: AreaKind,
    /// Evaluate at `(x, −t)`, which sweeps the lower half-plane.
    conjugate: bool,
}

impl Poles {
    fn new(c: &ParametrizedCurve, f: &TwoForm, kind: AreaKind) -> Self {
        let mut centers = Vec::new();
        let mut weights = Vec::new();
        for p in c.real() {
            if let Alpha::Finite(a) = p.alpha {
                centers.push(Complex64::new(a, 0.0));
                weights.push(p.n.to_f64());
            }
        }
        for p in c.complex() {
            centers.push(p.beta);
            weights.push(p.n.to_f64());
            centers.push(p.beta.conj());
            weights.push(p.n.to_f64());
        }
        Poles {
            centers,
            weights,
            omega: f.to_f64(),
            kind,
            conjugate: false,
        }
    }

    fn eval(&self, x: f64, t: f64) -> Result<f64, QuadratureError> {
        let t = if self.conjugate { -t } else { t };
        let rank = self.omega.len();
        let mut dx = vec![0.0; rank];
        let mut dt = vec![0.0; rank];
        for (c, n) in self.centers.iter().zip(&self.weights) {
            let (u, w) = (x - c.re, t - c.im);
            let r2 = u * u + w * w;
            if r2 == 0.0 {
                return Err(QuadratureError::EvaluationAtPuncture);
            }
            let (gx, gt) = match self.kind {
                // ∇ log|y − c|
                AreaKind::Log => (u / r2, w / r2),
                // ∇ arg(y − c)
                AreaKind::Arg => (-w / r2, u / r2),
            };
            for i in 0..rank {
                dx[i] += n[i] * gx;
                dt[i] += n[i] * gt;
            }
        }
        let mut s = 0.0;
        for i in 0..rank {
            for j in 0..rank {
                s += self.omega[i][j] * dx[i] * dt[j];
            }
        }
        Ok(s)
    }
}

/// The pullback `ϖ(∂ₓL, ∂ₜL)` at `y = x + it` for `L = log∘f` or `arg∘f`.
pub fn integrand(c: &ParametrizedCurve, f: &TwoForm, kind: AreaKind, x: f64, t: f64) -> Result<f64, QuadratureError> {
    Poles::new(c, f, kind).eval(x, t)
}

#[derive(Debug, Clone, Copy)]
enum Region {
    Rect,
    /// Polar sector around `center` inside the square of half-width `half`,
    /// parametrized by `u ∈ [0, 1]`, `θ`, with `r = ρ + u(r_sq(θ) − ρ)`.
    Polar { center: (f64, f64), half: f64, rho: f64 },
}

impl Region {
    fn eval(&self, poles: &Poles, a: f64, b: f64) -> Result<f64, QuadratureError> {
        match *self {
            Region::Rect => poles.eval(a, b),
            Region::Polar { center, half, rho } => {
                let (s, c) = b.sin_cos();
                let r_sq = half / c.abs().max(s.abs());
                let r = rho + a * (r_sq - rho);
                let v = poles.eval(center.0 + r * c, center.1 + r * s)?;
                Ok(v * r * (r_sq - rho))
            }
        }
    }
}

const GL8_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

#[derive(Debug, Clone, Copy)]
struct Rect {
    a0: f64,
    a1: f64,
    b0: f64,
    b1: f64,
}

impl Rect {
    fn quarters(&self) -> [Rect; 4] {
        let am = 0.5 * (self.a0 + self.a1);
        let bm = 0.5 * (self.b0 + self.b1);
        [
            Rect { a0: self.a0, a1: am, b0: self.b0, b1: bm },
            Rect { a0: am, a1: self.a1, b0: self.b0, b1: bm },
            Rect { a0: self.a0, a1: am, b0: bm, b1: self.b1 },
            Rect { a0: am, a1: self.a1, b0: bm, b1: self.b1 },
        ]
    }
}

fn gl8(region: &Region, poles: &Poles, r: &Rect) -> Result<f64, QuadratureError> {
    let (ha, ma) = (0.5 * (r.a1 - r.a0), 0.5 * (r.a1 + r.a0));
    let (hb, mb) = (0.5 * (r.b1 - r.b0), 0.5 * (r.b1 + r.b0));
    let mut s = 0.0;
    for (xa, wa) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
        let mut inner = 0.0;
        for (xb, wb) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
            inner += wb * region.eval(poles, ma + ha * xa, mb + hb * xb)?;
        }
        s += wa * inner;
    }
    Ok(s * ha * hb)
}

struct Cell {
    region: usize,
    rect: Rect,
    children: [f64; 4],
    value: f64,
    error: f64,
    seq: usize,
}

impl Cell {
    fn new(region: usize, regions: &[Region], poles: &Poles, rect: Rect, coarse: f64, seq: usize) -> Result<Self, QuadratureError> {
        let q = rect.quarters();
        let mut children = [0.0; 4];
        for (c, r) in children.iter_mut().zip(&q) {
            *c = gl8(&regions[region], poles, r)?;
        }
        let value: f64 = children.iter().sum();
        Ok(Cell {
            region,
            rect,
            children,
            value,
            error: (coarse - value).abs(),
            seq,
        })
    }
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.seq.cmp(&self.seq))
    }
}

#[derive(Debug, Clone, Copy)]
struct Adaptive {
    value: f64,
    error: f64,
    cells: usize,
}

/// Global adaptive integration: the cell with the largest disagreement
/// between its own rule and the sum over its quarters is split first.
fn integrate(
    regions: &[Region],
    initial: &[(usize, Rect)],
    poles: &Poles,
    target: f64,
    max_cells: usize,
) -> Result<Adaptive, QuadratureError> {
    let mut heap = BinaryHeap::new();
    let mut seq = 0;
    let mut total_err = 0.0;
    for &(region, rect) in initial {
        let coarse = gl8(&regions[region], poles, &rect)?;
        let cell = Cell::new(region, regions, poles, rect, coarse, seq)?;
        seq += 1;
        total_err += cell.error;
        heap.push(cell);
    }
    while total_err > target && heap.len() < max_cells {
        let Some(worst) = heap.pop() else { break };
        total_err -= worst.error;
        for (r, coarse) in worst.rect.quarters().iter().zip(worst.children) {
            let cell = Cell::new(worst.region, regions, poles, *r, coarse, seq)?;
            seq += 1;
            total_err += cell.error;
            heap.push(cell);
        }
        if seq % 4096 == 0 {
            total_err = heap.iter().map(|c| c.error).sum();
        }
    }
    let mut cells: Vec<Cell> = heap.into_vec();
    cells.sort_by_key(|c| c.seq);
    let value = cells.iter().map(|c| c.value).sum();
    let error = cells.iter().map(|c| c.error).sum();
    Ok(Adaptive {
        value,
        error,
        cells: cells.len(),
    })
}

/// Exclusion square around a puncture: centre, half-width, and whether it
/// sits on the real axis (then only its upper half is in the domain).
#[derive(Debug, Clone, Copy)]
struct Square {
    center: (f64, f64),
    half: f64,
    on_axis: bool,
}

impl Square {
    fn x_range(&self) -> (f64, f64) {
        (self.center.0 - self.half, self.center.0 + self.half)
    }

    fn t_range(&self) -> (f64, f64) {
        let lo = if self.on_axis { 0.0 } else { self.center.1 - self.half };
        (lo, self.center.1 + self.half)
    }

    fn contains(&self, x: f64, t: f64) -> bool {
        let (x0, x1) = self.x_range();
        let (t0, t1) = self.t_range();
        x > x0 && x < x1 && t > t0 && t < t1
    }

    fn sectors(&self) -> Vec<(f64, f64)> {
        let q = PI / 4.0;
        if self.on_axis {
            vec![(0.0, q), (q, 3.0 * q), (3.0 * q, PI)]
        } else {
            vec![(-3.0 * q, -q), (-q, q), (q, 3.0 * q), (3.0 * q, 5.0 * q)]
        }
    }
}

fn exclusion_squares(c: &ParametrizedCurve, scale: f64) -> Vec<Square> {
    let mut pts: Vec<((f64, f64), bool)> = Vec::new();
    for p in c.real() {
        if let Alpha::Finite(a) = p.alpha {
            pts.push(((a, 0.0), true));
        }
    }
    for p in c.complex() {
        pts.push(((p.beta.re, p.beta.im), false));
    }
    pts.iter()
        .enumerate()
        .map(|(k, &(ck, on_axis))| {
            let d = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &(cj, _))| (ck.0 - cj.0).hypot(ck.1 - cj.1))
                .fold(f64::INFINITY, f64::min);
            let mut half = (0.3 * d).min(scale);
            if !on_axis {
                half = half.min(0.9 * ck.1);
            }
            Square { center: ck, half, on_axis }
        })
        .collect()
}

fn breakpoints(edges: impl IntoIterator<Item = f64>, scale: f64, lo: f64, hi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = edges.into_iter().filter(|x| *x > lo && *x < hi).collect();
    v.push(lo);
    v.push(hi);
    let mut g = scale;
    while g < hi.max(-lo) {
        for s in [g, -g] {
            if s > lo && s < hi {
                v.push(s);
            }
        }
        g *= 2.0;
    }
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreaEstimate {
    pub value: f64,
    pub error_estimate: f64,
    /// Contribution of the box outside the exclusion squares.
    pub far: f64,
    /// Extrapolated contribution of the exclusion squares.
    pub near: f64,
    /// Square contributions at `ρ, ρ/2, …`.
    pub near_levels: Vec<f64>,
    pub tail_bound: f64,
    pub cells: usize,
}

impl AreaEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value,
            "value_over_pi2": self.value / (PI * PI),
            "error_estimate": self.error_estimate,
            "far": self.far,
            "near": self.near,
            "near_levels": self.near_levels,
            "tail_bound": self.tail_bound,
            "cells": self.cells,
        })
    }
}

/// `∫_H (log∘f)^*ϖ` or `∫_H (arg∘f)^*ϖ` with an error estimate.
pub fn area_quadrature(
    c: &ParametrizedCurve,
    f: &TwoForm,
    kind: AreaKind,
    cfg: &QuadratureConfig,
) -> Result<AreaEstimate, QuadratureError> {
    area_quadrature_impl(c, f, kind, cfg, false)
}

/// The same integral over the conjugate half `S̄`, computed as the integral
/// of the reflected integrand over the upper half-plane.
pub fn area_quadrature_conjugate(
    c: &ParametrizedCurve,
    f: &TwoForm,
    kind: AreaKind,
    cfg: &QuadratureConfig,
) -> Result<AreaEstimate, QuadratureError> {
    area_quadrature_impl(c, f, kind, cfg, true)
}

fn area_quadrature_impl(
    c: &ParametrizedCurve,
    f: &TwoForm,
    kind: AreaKind,
    cfg: &QuadratureConfig,
    conjugate: bool,
) -> Result<AreaEstimate, QuadratureError> {
    cfg.validate()?;
    // bring the puncture at infinity to a finite point so that the integrand decays like |y|⁻⁴
    let chart = if c.infinity_index().is_some() {
        let p = c
            .real()
            .iter()
            .filter_map(|q| q.alpha.finite())
            .fold(f64::NEG_INFINITY, f64::max);
        let p = if p.is_finite() { p + 1.0 } else { 0.0 };
        mobius_finite_chart(c, p)?
    } else {
        c.clone()
    };
    let mut poles = Poles::new(&chart, f, kind);
    poles.conjugate = conjugate;

    let extent = poles.centers.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = extent + 1.0;
    let big = cfg.truncation_radius.unwrap_or(1e3 * scale);
    let squares = exclusion_squares(&chart, scale);
    let budget = cfg.tol * PI * PI;

    // far field: grid cells of the box that are not inside a square
    let xs = breakpoints(squares.iter().flat_map(|s| [s.x_range().0, s.x_range().1]), scale, -big, big);
    let ts = breakpoints(squares.iter().flat_map(|s| [s.t_range().0, s.t_range().1]), scale, 0.0, big);
    let mut far_cells = Vec::new();
    for xw in xs.windows(2) {
        for tw in ts.windows(2) {
            let (xm, tm) = (0.5 * (xw[0] + xw[1]), 0.5 * (tw[0] + tw[1]));
            if squares.iter().any(|s| s.contains(xm, tm)) {
                continue;
            }
            far_cells.push((0, Rect { a0: xw[0], a1: xw[1], b0: tw[0], b1: tw[1] }));
        }
    }
    let far = integrate(&[Region::Rect], &far_cells, &poles, budget / 4.0, cfg.max_cells)?;

    // Halve ρ until the extrapolated value settles. The Richardson weights
    // amplify per-level quadrature errors by Π (2ᵏ + 1)/(2ᵏ − 1) < 8.
    let max_levels = cfg.richardson_levels + MAX_EXTRA_LEVELS;
    let level_target = budget / (32.0 * max_levels as f64);
    let mut near_levels = Vec::new();
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut near_quad_err = 0.0;
    let mut amplification = 1.0;
    let mut cells = far.cells;
    let (near, richardson_err) = loop {
        let m = near_levels.len();
        let mut regions = Vec::new();
        let mut initial = Vec::new();
        for s in &squares {
            let rho = cfg.puncture_radius.min(0.25 * s.half) / 2f64.powi(m as i32);
            let idx = regions.len();
            regions.push(Region::Polar { center: s.center, half: s.half, rho });
            for (th0, th1) in s.sectors() {
                initial.push((idx, Rect { a0: 0.0, a1: 1.0, b0: th0, b1: th1 }));
            }
        }
        let r = integrate(&regions, &initial, &poles, level_target, cfg.max_cells)?;
        near_levels.push(r.value);
        near_quad_err += r.error;
        cells += r.cells;

        let mut row = vec![r.value];
        for k in 1..=m {
            let p = 2f64.powi(k as i32);
            row.push((p * row[k - 1] - table[m - 1][k - 1]) / (p - 1.0));
        }
        if m > 0 {
            let p = 2f64.powi(m as i32);
            amplification *= (p + 1.0) / (p - 1.0);
        }
        table.push(row);
        if m + 1 >= cfg.richardson_levels {
            let last = &table[m];
            let err = (last[m] - last[m - 1]).abs();
            if err <= budget / 4.0 || m + 1 == max_levels {
                break (last[m], err);
            }
        }
    };

    // |F| ≲ C/|y|⁴ beyond the box: sample the half circle of radius `big`
    let c_est = (0..=16)
        .map(|i| {
            let th = PI * i as f64 / 16.0;
            poles.eval(big * th.cos(), big * th.sin()).map(|v| v.abs())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max)
        * big.powi(4);
    let tail_bound = PI * c_est / (2.0 * big * big);

    let value = far.value + near;
    let error_estimate = far.error + amplification * near_quad_err + richardson_err + tail_bound;
    if error_estimate > budget {
        return Err(QuadratureError::ToleranceNotReached {
            value,
            estimate: error_estimate,
            cells,
        });
    }
    Ok(AreaEstimate {
        value,
        error_estimate,
        far: far.value,
        near,
        near_levels,
        tail_bound,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{log_area_closed, ComplexPuncture, RealPuncture};
    use crate::lattice::LatticeVector;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    fn line() -> ParametrizedCurve {
        ParametrizedCurve::new(
            vec![0.0, 0.0],
            vec![
                RealPuncture { alpha: Alpha::Finite(0.0), n: v(&[-1, 0]) },
                RealPuncture { alpha: Alpha::Finite(1.0), n: v(&[0, -1]) },
                RealPuncture { alpha: Alpha::Inf, n: v(&[1, 1]) },
            ],
            vec![],
        )
        .unwrap()
    }

    fn parabola() -> ParametrizedCurve {
        ParametrizedCurve::new(
            vec![0.0, 0.0],
            vec![
                RealPuncture { alpha: Alpha::Finite(0.4), n: v(&[1, 0]) },
                RealPuncture { alpha: Alpha::Inf, n: v(&[-1, -2]) },
            ],
            vec![ComplexPuncture { beta: Complex64::new(-0.3, 0.8), n: v(&[0, 1]) }],
        )
        .unwrap()
    }

    #[test]
    fn integrand_basics() {
        let c = line();
        let f = TwoForm::standard_rank2();
        let zero = TwoForm::from_ints(&[vec![0, 0], vec![0, 0]]).unwrap();
        let neg = TwoForm::from_ints(&[vec![0, -1], vec![1, 0]]).unwrap();
        for (x, t) in [(0.3, 0.2), (-2.0, 1.5), (5.0, 0.01)] {
            assert_eq!(integrand(&c, &zero, AreaKind::Log, x, t).unwrap(), 0.0);
            let a = integrand(&c, &f, AreaKind::Log, x, t).unwrap();
            assert_eq!(integrand(&c, &neg, AreaKind::Log, x, t).unwrap(), -a);
            let b = integrand(&c, &f, AreaKind::Arg, x, t).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
        assert_eq!(integrand(&c, &f, AreaKind::Log, 1.0, 0.0), Err(QuadratureError::EvaluationAtPuncture));
        // all ends along one direction: ϖ(n, n) = 0
        let flat = ParametrizedCurve::new(
            vec![0.0, 0.0],
            vec![
                RealPuncture { alpha: Alpha::Finite(0.0), n: v(&[1, 0]) },
                RealPuncture { alpha: Alpha::Finite(1.0), n: v(&[-1, 0]) },
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(integrand(&flat, &f, AreaKind::Log, 0.4, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn line_area() {
        let f = TwoForm::standard_rank2();
        let cfg = QuadratureConfig::default();
        let a = area_quadrature(&line(), &f, AreaKind::Log, &cfg).unwrap();
        assert!((a.value - PI * PI / 2.0).abs() < 1e-3 * PI * PI, "{a:?}");
        assert!(a.error_estimate <= cfg.tol * PI * PI);
        let b = area_quadrature(&line(), &f, AreaKind::Arg, &cfg).unwrap();
        assert!((a.value - b.value).abs() < 2.0 * cfg.tol * PI * PI);
        let conj = area_quadrature_conjugate(&line(), &f, AreaKind::Log, &cfg).unwrap();
        assert!((conj.value + a.value).abs() < 2.0 * cfg.tol * PI * PI);
    }

    #[test]
    fn parabola_matches_closed_form() {
        let f = TwoForm::standard_rank2();
        let cfg = QuadratureConfig::default();
        let a = area_quadrature(&parabola(), &f, AreaKind::Log, &cfg).unwrap();
        let closed = log_area_closed(&parabola(), &f).unwrap().value;
        assert!((a.value - closed).abs() < 1e-3 * PI * PI, "{} vs {}", a.value, closed);
    }

    #[test]
    fn config_validation() {
        let bad = QuadratureConfig { richardson_levels: 1, ..Default::default() };
        assert!(matches!(
            area_quadrature(&line(), &TwoForm::standard_rank2(), AreaKind::Log, &bad),
            Err(QuadratureError::Config(_))
        ));
        let starved = QuadratureConfig { max_cells: 1, tol: 1e-12, ..Default::default() };
        assert!(matches!(
            area_quadrature(&line(), &TwoForm::standard_rank2(), AreaKind::Log, &starved),
            Err(QuadratureError::ToleranceNotReached { .. })
        ));
    }
}
