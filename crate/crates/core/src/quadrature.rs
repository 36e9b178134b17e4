//! Radial quadrature for `int_0^1 g(r) r dr` and uniform-grid angular
//! Fourier analysis.
//!
//! The smooth rule is Gauss-Jacobi for the weight `r` on `[0, 1]`, so the
//! measure factor is exact and an `order`-point rule integrates polynomials of
//! degree `2 order - 1` against `r dr`. The graded rule is built from
//! composite 16-point Gauss-Legendre panels on the dyadic levels
//! `[2^-(k+1), 2^-k]`; the part of `[0, 2^-depth]` below the deepest level is
//! estimated from the geometric decay of the level sums.

use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of dyadic levels of the graded rule.
pub const DEFAULT_GRADED_DEPTH: usize = 40;
/// Gauss points per graded panel.
pub const GRADED_PANEL_POINTS: usize = 16;

// level-sum ratios this close to one are treated as a non-summable tail
const DIVERGENCE_RATIO: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    Smooth,
    Graded,
}

/// Value of an integral that may legitimately be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integral {
    Finite(f64),
    Divergent,
}

impl Integral {
    pub fn finite(self) -> Option<f64> {
        match self {
            Integral::Finite(v) => Some(v),
            Integral::Divergent => None,
        }
    }
}

/// Nodes and weights for `int_0^1 g(r) r dr`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: RuleKind,
    order: usize,
    // graded rules: node ranges of each dyadic level, outermost first
    levels: Vec<Range<usize>>,
}

/// Builds a radial rule of the given kind.
pub fn radial_rule(order: usize, kind: RuleKind) -> Result<RadialGrid> {
    match kind {
        RuleKind::Smooth => RadialGrid::smooth(order),
        RuleKind::Graded => RadialGrid::graded(order, DEFAULT_GRADED_DEPTH),
    }
}

impl RadialGrid {
    pub fn smooth(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyRule);
        }
        let (nodes, weights) = gauss_jacobi(order, 1.0);
        Ok(RadialGrid { nodes, weights, kind: RuleKind::Smooth, order, levels: Vec::new() })
    }

    /// Graded rule resolving power-law behavior at the origin. `order` sets the
    /// node density (about `order` nodes per unit length on the outer level).
    pub fn graded(order: usize, depth: usize) -> Result<Self> {
        if order == 0 || depth == 0 {
            return Err(Error::EmptyRule);
        }
        let (gx, gw) = gauss_jacobi(GRADED_PANEL_POINTS, 0.0);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut levels = vec![0..0; depth];
        // innermost level first so nodes come out increasing
        for k in (0..depth).rev() {
            let hi = 0.5f64.powi(k as i32);
            let lo = 0.5 * hi;
            let len = hi - lo;
            let panels = ((len * order as f64) / GRADED_PANEL_POINTS as f64).ceil().max(1.0) as usize;
            let width = len / panels as f64;
            let start = nodes.len();
            for p in 0..panels {
                let a = lo + p as f64 * width;
                for (x, w) in gx.iter().zip(&gw) {
                    let r = a + width * x;
                    nodes.push(r);
                    weights.push(width * w * r);
                }
            }
            levels[k] = start..nodes.len();
        }
        Ok(RadialGrid { nodes, weights, kind: RuleKind::Graded, order, levels })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `int_0^1 g(r) r dr` from samples of `g` at the nodes.
    pub fn integrate(&self, values: &[f64]) -> Integral {
        debug_assert_eq!(values.len(), self.nodes.len());
        let total = pairwise_dot(&self.weights, values);
        if !total.is_finite() {
            return Integral::Divergent;
        }
        if self.kind == RuleKind::Smooth || self.levels.len() < 2 {
            return Integral::Finite(total);
        }
        let depth = self.levels.len();
        let level_sum = |k: usize| {
            let r = self.levels[k].clone();
            pairwise_dot(&self.weights[r.clone()], &values[r])
        };
        let inner = level_sum(depth - 1);
        let outer = level_sum(depth - 2);
        if inner == 0.0 || outer == 0.0 || inner.signum() != outer.signum() {
            return Integral::Finite(total);
        }
        let ratio = inner / outer;
        if ratio >= DIVERGENCE_RATIO {
            return Integral::Divergent;
        }
        Integral::Finite(total + inner * ratio / (1.0 - ratio))
    }

    /// Integrates a function given as a closure.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> Integral {
        let values: Vec<f64> = self.nodes.iter().map(|&r| f(r)).collect();
        self.integrate(&values)
    }
}

/// Gauss-Jacobi nodes and weights on `[0, 1]` for the weight `r^beta`, `beta > -1`.
///
/// Nodes are ascending. The rule is exact for polynomials of degree `2n - 1`.
pub fn gauss_jacobi(n: usize, beta: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(beta > -1.0, "weight exponent must exceed -1");
    let mut roots: Vec<f64> = Vec::with_capacity(n);
    let mut derivs: Vec<f64> = Vec::with_capacity(n);
    let denom = n as f64 + 0.5 * (beta + 1.0);
    for i in 1..=n {
        let theta = (i as f64 - 0.25) * PI / denom;
        let mut x = theta.cos();
        for _ in 0..100 {
            let (p, dp) = jacobi_eval(n, beta, x);
            let deflate: f64 = roots.iter().map(|&r| 1.0 / (x - r)).sum();
            let step = p / (dp - p * deflate);
            x -= step;
            if step.abs() <= 1e-16 {
                break;
            }
        }
        // one clean Newton step without deflation
        let (p, dp) = jacobi_eval(n, beta, x);
        x -= p / dp;
        roots.push(x);
        derivs.push(jacobi_eval(n, beta, x).1);
    }
    let mut pairs: Vec<(f64, f64)> = roots
        .iter()
        .zip(&derivs)
        .map(|(&x, &dp)| (0.5 * (1.0 + x), 1.0 / ((1.0 - x * x) * dp * dp)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// `(P_n^{(0,beta)}(x), d/dx P_n^{(0,beta)}(x))` in the standard normalization.
fn jacobi_eval(n: usize, beta: f64, x: f64) -> (f64, f64) {
    let a = 0.0;
    let b = beta;
    let mut p0 = 1.0;
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p1 = 0.5 * ((a + b + 2.0) * x + (a - b));
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let s = 2.0 * nf + a + b;
    let dp = (nf * ((a - b) - s * x) * p1 + 2.0 * (nf + a) * (nf + b) * p0) / (s * (1.0 - x * x));
    (p1, dp)
}

/// Fixed-order pairwise summation of `a[i] * b[i]`.
pub(crate) fn pairwise_dot(a: &[f64], b: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if a.len() <= LEAF {
        return a.iter().zip(b).map(|(x, y)| x * y).sum();
    }
    let mid = a.len() / 2;
    pairwise_dot(&a[..mid], &b[..mid]) + pairwise_dot(&a[mid..], &b[mid..])
}

/// Uniform angular grid `t_j = j / count` (angle in turns).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngularGrid {
    count: usize,
}

impl AngularGrid {
    pub fn new(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptyRule);
        }
        Ok(AngularGrid { count })
    }

    /// An alias-free grid for angular orders up to `m_max`.
    pub fn alias_free(count: usize, m_max: usize) -> Result<Self> {
        let grid = Self::new(count)?;
        grid.check_alias_free(m_max)?;
        Ok(grid)
    }

    /// The default size `4 (m_max + 1)`.
    pub fn default_for(m_max: usize) -> Self {
        AngularGrid { count: 4 * (m_max + 1) }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 / self.count as f64
    }

    pub fn check_alias_free(&self, m_max: usize) -> Result<()> {
        let needed = 2 * m_max + 1;
        if self.count < needed {
            return Err(Error::Aliasing { count: self.count, m_max, needed });
        }
        Ok(())
    }

    /// `e^{2 pi i k / count}` for `k = 0..count`; indices are reduced mod `count`
    /// before lookup so large `m j` products keep full accuracy.
    pub fn twiddles(&self) -> Vec<Complex64> {
        (0..self.count)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / self.count as f64))
            .collect()
    }
}

/// `f_m = (1/K) sum_j samples_j e^{-2 pi i m t_j}` for `m = -m_max..=m_max`.
pub fn angular_coefficients(samples: &[Complex64], m_max: usize) -> Result<Vec<Complex64>> {
    let grid = AngularGrid::alias_free(samples.len(), m_max)?;
    Ok(dft_modes(samples, &grid.twiddles(), m_max))
}

pub(crate) fn dft_modes(samples: &[Complex64], twiddles: &[Complex64], m_max: usize) -> Vec<Complex64> {
    let k = samples.len();
    let scale = 1.0 / k as f64;
    (-(m_max as i64)..=m_max as i64)
        .map(|m| {
            let step = (-m).rem_euclid(k as i64) as usize;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = 0usize;
            for s in samples {
                acc += s * twiddles[idx];
                idx += step;
                if idx >= k {
                    idx -= k;
                }
            }
            acc * scale
        })
        .collect()
}

/// Inverse of [`angular_coefficients`]: `sum_m f_m e^{2 pi i m t_j}` on `count` nodes.
pub fn angular_synthesis(coeffs: &[Complex64], count: usize) -> Vec<Complex64> {
    let twiddles = AngularGrid { count }.twiddles();
    let m_max = (coeffs.len() / 2) as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); count];
    synthesize_into(coeffs, m_max, &twiddles, &mut out);
    out
}

pub(crate) fn synthesize_into(coeffs: &[Complex64], m_max: i64, twiddles: &[Complex64], out: &mut [Complex64]) {
    let k = out.len() as i64;
    for (j, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in coeffs.iter().enumerate() {
            let m = i as i64 - m_max;
            let idx = (m * j as i64).rem_euclid(k) as usize;
            acc += c * twiddles[idx];
        }
        *slot = acc;
    }
}
