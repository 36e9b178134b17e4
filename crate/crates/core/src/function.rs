//! Functions on the disk and their samples on tensor-product polar grids.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::bessel_zeros;
use crate::disk_basis::angular_phase;
use crate::error::Result;
use crate::exec::Execution;
use crate::quadrature::{AngularGrid, RadialGrid, RuleKind, DEFAULT_GRADED_DEPTH};
use crate::transform::{ModeCoefficients, Synthesizer};

/// Declared radial behavior. Singular profiles are integrated with the graded
/// rule; nothing is auto-detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialProfile {
    Smooth,
    SingularAtZero,
}

impl RadialProfile {
    pub fn rule_kind(self) -> RuleKind {
        match self {
            RadialProfile::Smooth => RuleKind::Smooth,
            RadialProfile::SingularAtZero => RuleKind::Graded,
        }
    }

    fn join(self, other: Self) -> Self {
        if self == RadialProfile::SingularAtZero || other == RadialProfile::SingularAtZero {
            RadialProfile::SingularAtZero
        } else {
            RadialProfile::Smooth
        }
    }
}

/// Grid sizing shared by the transforms, norms and experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    /// Minimum radial order; transforms raise it as the window demands.
    pub radial_order: usize,
    /// Angular points; `None` means `4 (M + 1)` for the window at hand.
    pub angular_count: Option<usize>,
    pub graded_depth: usize,
    pub execution: Execution,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            radial_order: 64,
            angular_count: None,
            graded_depth: DEFAULT_GRADED_DEPTH,
            execution: Execution::default(),
        }
    }
}

impl GridConfig {
    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn angular_for(&self, m_max: usize) -> Result<AngularGrid> {
        match self.angular_count {
            Some(count) => AngularGrid::alias_free(count, m_max),
            None => Ok(AngularGrid::default_for(m_max)),
        }
    }

    /// Radial rule resolving products of modes up to the zero `j_max`.
    pub fn radial_for(&self, profile: RadialProfile, j_max: f64) -> Result<RadialGrid> {
        match profile {
            RadialProfile::Smooth => {
                let order = self.radial_order.max(j_max.ceil() as usize + 24);
                RadialGrid::smooth(order)
            }
            RadialProfile::SingularAtZero => {
                let order = self.radial_order.max((2.0 * j_max).ceil() as usize + 32);
                RadialGrid::graded(order, self.graded_depth)
            }
        }
    }

    /// Grid for analysing or measuring functions in the window `(N, M)`.
    pub fn grid_for(&self, profile: RadialProfile, m_max: usize, n_max: usize) -> Result<DiskGrid> {
        let j_max = largest_zero(m_max, n_max)?;
        Ok(DiskGrid::new(self.radial_for(profile, j_max)?, self.angular_for(m_max)?).with_execution(self.execution))
    }
}

/// `j_N^M`, the largest zero used by the window `(N, M)` (zero for `N = 0`).
pub fn largest_zero(m_max: usize, n_max: usize) -> Result<f64> {
    if n_max == 0 {
        return Ok(0.0);
    }
    Ok(bessel_zeros(m_max as i32, n_max)?[n_max - 1])
}

/// Tensor grid: radial rule times uniform angular nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    radial: RadialGrid,
    angular: AngularGrid,
    execution: Execution,
}

impl DiskGrid {
    pub fn new(radial: RadialGrid, angular: AngularGrid) -> Self {
        DiskGrid { radial, angular, execution: Execution::default() }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn radial(&self) -> &RadialGrid {
        &self.radial
    }

    pub fn angular(&self) -> &AngularGrid {
        &self.angular
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }
}

/// Values on a [`DiskGrid`], radial-major (`values[i * K + j]` at `(r_i, t_j)`).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples {
    values: Vec<Complex64>,
    radial_len: usize,
    angular_len: usize,
}

impl GridSamples {
    pub fn from_values(values: Vec<Complex64>, radial_len: usize, angular_len: usize) -> Self {
        assert_eq!(values.len(), radial_len * angular_len);
        GridSamples { values, radial_len, angular_len }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn radial_len(&self) -> usize {
        self.radial_len
    }

    pub fn angular_len(&self) -> usize {
        self.angular_len
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.values[i * self.angular_len..(i + 1) * self.angular_len]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.values.chunks(self.angular_len)
    }

    pub fn minus(&self, other: &GridSamples) -> GridSamples {
        assert_eq!(self.values.len(), other.values.len());
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        GridSamples { values, ..*self }
    }

    pub fn scaled(&self, c: Complex64) -> GridSamples {
        GridSamples { values: self.values.iter().map(|v| v * c).collect(), ..*self }
    }

    /// Largest pointwise distance.
    pub fn sup_distance(&self, other: &GridSamples) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

type Evaluator = dyn Fn(f64, f64) -> Complex64 + Send + Sync;

#[derive(Clone)]
enum Repr {
    Closure(Arc<Evaluator>),
    Series { coeffs: Arc<ModeCoefficients>, n: usize, m: usize },
    Combination(Arc<[(Complex64, DiskFunction)]>),
}

/// A function on the closed unit disk, `(r, t) -> complex` with `t` in turns.
#[derive(Clone)]
pub struct DiskFunction {
    repr: Repr,
    profile: RadialProfile,
}

impl fmt::Debug for DiskFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Closure(_) => "closure".to_string(),
            Repr::Series { n, m, .. } => format!("series(N={n}, M={m})"),
            Repr::Combination(parts) => format!("combination({} terms)", parts.len()),
        };
        f.debug_struct("DiskFunction").field("repr", &kind).field("profile", &self.profile).finish()
    }
}

impl DiskFunction {
    pub fn from_fn<F>(profile: RadialProfile, f: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        DiskFunction { repr: Repr::Closure(Arc::new(f)), profile }
    }

    /// A real radial function `f(r, t) = g(r)`.
    pub fn radial<G>(profile: RadialProfile, g: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_fn(profile, move |r, _| Complex64::new(g(r), 0.0))
    }

    pub(crate) fn series(coeffs: Arc<ModeCoefficients>, n: usize, m: usize) -> Self {
        DiskFunction { repr: Repr::Series { coeffs, n, m }, profile: RadialProfile::Smooth }
    }

    /// `sum c_k f_k`.
    pub fn combination(terms: Vec<(Complex64, DiskFunction)>) -> Self {
        let profile = terms.iter().fold(RadialProfile::Smooth, |p, (_, f)| p.join(f.profile));
        DiskFunction { repr: Repr::Combination(terms.into()), profile }
    }

    pub fn minus(&self, other: &DiskFunction) -> Self {
        Self::combination(vec![(Complex64::new(1.0, 0.0), self.clone()), (Complex64::new(-1.0, 0.0), other.clone())])
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::combination(vec![(c, self.clone())])
    }

    pub fn profile(&self) -> RadialProfile {
        self.profile
    }

    /// Angular band limit when it is known from the representation.
    pub fn band_limit(&self) -> Option<usize> {
        match &self.repr {
            Repr::Closure(_) => None,
            Repr::Series { m, .. } => Some(*m),
            Repr::Combination(parts) => parts.iter().try_fold(0, |acc, (_, f)| f.band_limit().map(|b| acc.max(b))),
        }
    }

    pub fn eval(&self, r: f64, t: f64) -> Complex64 {
        match &self.repr {
            Repr::Closure(f) => f(r, t),
            Repr::Series { coeffs, n, m } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for mm in -(*m as i32)..=*m as i32 {
                    let zeros = bessel_zeros(mm, *n).expect("window validated at construction");
                    let radial: Complex64 = (1..=*n)
                        .map(|nn| coeffs.get(mm, nn).unwrap() * crate::bessel::bessel_j(mm, zeros[nn - 1] * r))
                        .sum();
                    acc += radial * angular_phase(mm, t);
                }
                acc
            }
            Repr::Combination(parts) => parts.iter().map(|(c, f)| c * f.eval(r, t)).sum(),
        }
    }

    /// Materializes the function on `grid`.
    pub fn sample(&self, grid: &DiskGrid) -> Result<GridSamples> {
        let nr = grid.radial().len();
        let k = grid.angular().count();
        match &self.repr {
            Repr::Closure(f) => {
                let mut values = vec![Complex64::new(0.0, 0.0); nr * k];
                let nodes = grid.radial().nodes();
                grid.execution().for_each_chunk(&mut values, k, |i, row| {
                    let r = nodes[i];
                    for (j, v) in row.iter_mut().enumerate() {
                        *v = f(r, grid.angular().node(j));
                    }
                });
                Ok(GridSamples::from_values(values, nr, k))
            }
            Repr::Series { coeffs, n, m } => {
                let synth = Synthesizer::new(grid, *m, *n)?;
                synth.samples(coeffs, *n, *m)
            }
            Repr::Combination(parts) => {
                let mut values = vec![Complex64::new(0.0, 0.0); nr * k];
                for (c, f) in parts.iter() {
                    let s = f.sample(grid)?;
                    for (acc, v) in values.iter_mut().zip(s.values()) {
                        *acc += c * v;
                    }
                }
                Ok(GridSamples::from_values(values, nr, k))
            }
        }
    }
}
