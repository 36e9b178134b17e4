//! The two positive kernel operators on `[0, 1]`,
//!
//! ```text
//! R f(x) = int_0^1 f(t) / (2 - x - t) dt,      A f(x) = int_0^1 f(t) / (x + t) dt,
//! ```
//!
//! the Hardy-Littlewood maximal function on grid-aligned intervals, the
//! Muckenhoupt window for the power weight `r^{1 - p/2}`, and vector-valued
//! norms in `L^p(r^{1 - p/2} dr; l^q)`.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::norms::{pairwise_sum, NormValue};
use crate::quadrature::{gauss_jacobi, pairwise_dot, Integral, RadialGrid, DEFAULT_GRADED_DEPTH};
use crate::report::{ser_sig17, ser_vec_sig17};

/// Gauss points per kernel panel.
const KERNEL_PANEL_POINTS: usize = 24;
/// Uniform panels laid under the graded ones, resolving `f` itself.
const KERNEL_UNIFORM_PANELS: usize = 32;
/// Default number of cells for [`maximal_function`].
pub const DEFAULT_MAXIMAL_CELLS: usize = 256;
const CELL_POINTS: usize = 4;

/// Composite rule on `[0, 1]` graded towards `0`, accurate for
/// `g(t) / (x + t)` with smooth `g` whenever `x >= x_min`.
#[derive(Debug, Clone)]
struct KernelRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl KernelRule {
    fn new(x_min: f64) -> Self {
        let mut breaks: Vec<f64> = (0..=KERNEL_UNIFORM_PANELS).map(|i| i as f64 / KERNEL_UNIFORM_PANELS as f64).collect();
        let mut h = 0.5;
        while h > 0.25 * x_min {
            breaks.push(h);
            h *= 0.5;
        }
        breaks.push(h);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let (gx, gw) = gauss_jacobi(KERNEL_PANEL_POINTS, 0.0);
        let mut nodes = Vec::with_capacity(breaks.len() * KERNEL_PANEL_POINTS);
        let mut weights = Vec::with_capacity(nodes.capacity());
        for w in breaks.windows(2) {
            let (a, len) = (w[0], w[1] - w[0]);
            for (x, wt) in gx.iter().zip(&gw) {
                nodes.push(a + len * x);
                weights.push(len * wt);
            }
        }
        KernelRule { nodes, weights }
    }

    /// `sum w_j g_j / (x + t_j)` for samples `g_j = g(t_j)`.
    fn additive(&self, samples: &[f64], x: f64) -> f64 {
        let terms: Vec<f64> =
            self.nodes.iter().zip(&self.weights).zip(samples).map(|((t, w), g)| w * g / (x + t)).collect();
        pairwise_sum(&terms)
    }
}

fn check_additive(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter(format!("the additive kernel needs x > 0, got {x}")));
    }
    Ok(())
}

fn check_reflected(x: f64) -> Result<()> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("the reflected kernel needs x in [0, 1), got {x}")));
    }
    Ok(())
}

/// `int_0^1 f(t) / (x + t) dt` for `x > 0`.
pub fn kernel_op_additive<F: Fn(f64) -> f64>(f: F, x: f64) -> Result<f64> {
    check_additive(x)?;
    let rule = KernelRule::new(x);
    let samples: Vec<f64> = rule.nodes.iter().map(|&t| f(t)).collect();
    Ok(rule.additive(&samples, x))
}

/// `int_0^1 f(t) / (2 - x - t) dt` for `x` in `[0, 1)`.
///
/// Computed as the additive kernel applied to `s -> f(1 - s)` at `1 - x`.
pub fn kernel_op_reflected<F: Fn(f64) -> f64>(f: F, x: f64) -> Result<f64> {
    check_reflected(x)?;
    kernel_op_additive(|s| f(1.0 - s), 1.0 - x)
}

/// Maximal averages of `|f|` over grid-aligned intervals of a uniform cell grid.
///
/// `f` is replaced by its cell averages, so the result is exact for functions
/// constant on cells.
#[derive(Debug, Clone)]
pub struct CellMaximal {
    // best average over all cell ranges containing cell c
    per_cell: Vec<f64>,
}

impl CellMaximal {
    pub fn new<F: Fn(f64) -> f64>(f: F, cells: usize) -> Result<Self> {
        if cells == 0 {
            return Err(Error::InvalidParameter("maximal function needs at least one cell".into()));
        }
        let (gx, gw) = gauss_jacobi(CELL_POINTS, 0.0);
        let h = 1.0 / cells as f64;
        let averages: Vec<f64> = (0..cells)
            .map(|c| gx.iter().zip(&gw).map(|(x, w)| w * f((c as f64 + x) * h).abs()).sum())
            .collect();
        Ok(Self::from_cell_averages(&averages))
    }

    /// From precomputed averages of `|f|` (nonnegative) on equal cells.
    pub fn from_cell_averages(averages: &[f64]) -> Self {
        let n = averages.len();
        let mut prefix = vec![0.0; n + 1];
        for (i, a) in averages.iter().enumerate() {
            prefix[i + 1] = prefix[i] + a;
        }
        let mut per_cell = vec![0.0f64; n];
        let mut suffix = vec![0.0f64; n];
        for i in 0..n {
            // suffix[c] = max_{j >= c} avg(i..=j), for c >= i
            let mut best = f64::NEG_INFINITY;
            for j in (i..n).rev() {
                best = best.max((prefix[j + 1] - prefix[i]) / (j + 1 - i) as f64);
                suffix[j] = best;
            }
            for c in i..n {
                per_cell[c] = per_cell[c].max(suffix[c]);
            }
        }
        CellMaximal { per_cell }
    }

    pub fn cells(&self) -> usize {
        self.per_cell.len()
    }

    /// `M f(x)` for `x` in `[0, 1]`; a cell boundary takes the larger neighbour.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.per_cell.len();
        let s = (x.clamp(0.0, 1.0) * n as f64).min(n as f64);
        let k = s.floor() as usize;
        if s == k as f64 {
            let left = if k > 0 { self.per_cell[k - 1] } else { 0.0 };
            let right = if k < n { self.per_cell[k] } else { 0.0 };
            left.max(right)
        } else {
            self.per_cell[k]
        }
    }
}

/// `sup_{I contains x} |I|^{-1} int_I |f|` over grid-aligned intervals of
/// [`DEFAULT_MAXIMAL_CELLS`] cells.
pub fn maximal_function<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    CellMaximal::new(f, DEFAULT_MAXIMAL_CELLS).expect("nonzero cell count").eval(x)
}

/// Literal form of the window `-1 < 1 - p/2 < p - 1`.
pub fn ap_weight_check(p: f64) -> bool {
    let exponent = 1.0 - p / 2.0;
    -1.0 < exponent && exponent < p - 1.0
}

/// The same window solved for `p`: `4/3 < p < 4`.
pub fn ap_window_simplified(p: f64) -> bool {
    4.0 / 3.0 < p && p < 4.0
}

/// Quadrature for `int_0^1 g(r) r^{1 - p/2} dr`.
///
/// Gauss-Jacobi with the weight built in while it is integrable (`p < 4`);
/// otherwise the graded rule, which reports non-summable tails as divergent.
#[derive(Debug, Clone)]
pub struct WeightRule {
    p: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    graded: Option<RadialGrid>,
}

impl WeightRule {
    pub fn new(p: f64, order: usize) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("exponent p must be finite and >= 1, got {p}")));
        }
        if order == 0 {
            return Err(Error::EmptyRule);
        }
        let exponent = 1.0 - p / 2.0;
        if exponent > -1.0 {
            let (nodes, weights) = gauss_jacobi(order, exponent);
            return Ok(WeightRule { p, nodes, weights, graded: None });
        }
        let grid = RadialGrid::graded(order, DEFAULT_GRADED_DEPTH)?;
        Ok(WeightRule { p, nodes: grid.nodes().to_vec(), weights: grid.weights().to_vec(), graded: Some(grid) })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn exponent(&self) -> f64 {
        1.0 - self.p / 2.0
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn integrate(&self, values: &[f64]) -> Integral {
        match &self.graded {
            None => {
                let v = pairwise_dot(&self.weights, values);
                if v.is_finite() {
                    Integral::Finite(v)
                } else {
                    Integral::Divergent
                }
            }
            Some(grid) => {
                let shift = self.exponent() - 1.0;
                let scaled: Vec<f64> = values.iter().zip(&self.nodes).map(|(v, r)| v * r.powf(shift)).collect();
                grid.integrate(&scaled)
            }
        }
    }
}

/// Real functions on `[0, 1]` sampled at the nodes of one [`WeightRule`].
#[derive(Debug, Clone)]
pub struct WeightedFamily {
    rule: Arc<WeightRule>,
    q: f64,
    members: Vec<Vec<f64>>,
}

impl WeightedFamily {
    pub fn new(rule: Arc<WeightRule>, q: f64, members: Vec<Vec<f64>>) -> Result<Self> {
        if !(q >= 1.0) {
            return Err(Error::InvalidParameter(format!("exponent q must be >= 1, got {q}")));
        }
        if members.is_empty() {
            return Err(Error::InvalidParameter("a family needs at least one member".into()));
        }
        for m in &members {
            if m.len() != rule.nodes().len() {
                return Err(Error::InvalidParameter(format!(
                    "member has {} samples, the rule has {} nodes",
                    m.len(),
                    rule.nodes().len()
                )));
            }
            if m.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter("family samples must be finite".into()));
            }
        }
        Ok(WeightedFamily { rule, q, members })
    }

    /// Samples each function at the rule's nodes.
    pub fn sample<F: Fn(f64) -> f64>(rule: Arc<WeightRule>, q: f64, fs: &[F]) -> Result<Self> {
        let members = fs.iter().map(|f| rule.nodes().iter().map(|&r| f(r)).collect()).collect();
        Self::new(rule, q, members)
    }

    pub fn rule(&self) -> &WeightRule {
        &self.rule
    }

    pub fn p(&self) -> f64 {
        self.rule.p()
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn members(&self) -> &[Vec<f64>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `[int_0^1 (sum_k |f_k(r)|^q)^{p/q} r^{1 - p/2} dr]^{1/p}`.
pub fn weighted_vector_norm(fam: &WeightedFamily) -> NormValue {
    let (p, q) = (fam.p(), fam.q());
    let per_node: Vec<f64> = (0..fam.rule.nodes().len())
        .map(|i| {
            if q.is_infinite() {
                return fam.members.iter().map(|m| m[i].abs()).fold(0.0, f64::max).powf(p);
            }
            let terms: Vec<f64> = fam.members.iter().map(|m| m[i].abs().powf(q)).collect();
            pairwise_sum(&terms).powf(p / q)
        })
        .collect();
    match fam.rule.integrate(&per_node) {
        Integral::Finite(v) if v.is_finite() => NormValue::Finite(v.max(0.0).powf(1.0 / p)),
        _ => NormValue::Divergent,
    }
}

/// Operators compared in the boundedness experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightedOperator {
    Reflected,
    Additive,
    Maximal,
}

impl WeightedOperator {
    pub const ALL: [WeightedOperator; 3] = [WeightedOperator::Reflected, WeightedOperator::Additive, WeightedOperator::Maximal];
}

/// Applies `op` to every member and samples the results on `rule`.
pub fn apply_memberwise<F>(
    op: WeightedOperator,
    members: &[F],
    rule: Arc<WeightRule>,
    q: f64,
    exec: Execution,
) -> Result<WeightedFamily>
where
    F: Fn(f64) -> f64 + Sync,
{
    let nodes = rule.nodes().to_vec();
    let smallest = nodes.iter().copied().fold(1.0, f64::min).min(1.0 - nodes.iter().copied().fold(0.0, f64::max));
    let kernel = KernelRule::new(smallest.max(f64::MIN_POSITIVE));
    let out = exec.map(members.len(), |k| {
        let f = &members[k];
        match op {
            WeightedOperator::Additive => {
                let g: Vec<f64> = kernel.nodes.iter().map(|&t| f(t)).collect();
                nodes.iter().map(|&x| kernel.additive(&g, x)).collect::<Vec<f64>>()
            }
            WeightedOperator::Reflected => {
                let g: Vec<f64> = kernel.nodes.iter().map(|&s| f(1.0 - s)).collect();
                nodes.iter().map(|&x| kernel.additive(&g, 1.0 - x)).collect()
            }
            WeightedOperator::Maximal => {
                let m = CellMaximal::new(f, DEFAULT_MAXIMAL_CELLS).expect("nonzero cell count");
                nodes.iter().map(|&x| m.eval(x)).collect()
            }
        }
    });
    WeightedFamily::new(rule, q, out)
}

/// A random smooth member: a Gaussian bump on a constant background.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub center: f64,
    pub width: f64,
    pub height: f64,
    pub offset: f64,
}

impl Bump {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        Bump {
            center: rng.gen_range(0.0..1.0),
            width: (rng.gen_range(0.03f64.ln()..0.3f64.ln())).exp(),
            height: rng.gen_range(-1.0..1.0),
            offset: rng.gen_range(-0.2..0.2),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let z = (t - self.center) / self.width;
        self.offset + self.height * (-z * z).exp()
    }
}

/// Per-size caps of `||(T f_k)|| / ||(f_k)||` and their log-log trend.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendReport {
    pub operator: WeightedOperator,
    #[serde(serialize_with = "ser_sig17")]
    pub p: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub q: f64,
    pub sizes: Vec<usize>,
    #[serde(serialize_with = "ser_vec_sig17")]
    pub caps: Vec<f64>,
    /// Least-squares slope of `ln cap` against `ln K`.
    #[serde(serialize_with = "ser_sig17")]
    pub slope: f64,
    /// `exp(slope * ln(K_max / K_min))`, the fitted growth of the cap over the sweep.
    #[serde(serialize_with = "ser_sig17")]
    pub growth: f64,
    /// `cap(K_max) / cap(K_prev)`, the change over the last doubling.
    #[serde(serialize_with = "ser_sig17")]
    pub saturation: f64,
}

impl TrendReport {
    /// No upward trend: log-log slope at most `tol` and the last step grows the
    /// cap by at most a factor `1 + tol`.
    pub fn bounded(&self, tol: f64) -> bool {
        self.slope <= tol && self.saturation <= 1.0 + tol
    }
}

/// Settings for [`uniform_bound_trend`].
#[derive(Debug, Clone, PartialEq)]
pub struct TrendConfig {
    pub sizes: Vec<usize>,
    pub families: usize,
    pub order: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for TrendConfig {
    fn default() -> Self {
        TrendConfig { sizes: vec![1, 2, 4, 8, 16], families: 50, order: 96, seed: 7, execution: Execution::default() }
    }
}

/// Empirical cap of the operator ratio over random families of each size.
///
/// `q` is conjugate to `p`. The cap is the largest ratio seen over
/// `cfg.families` families; the statement being probed is that it does not
/// grow with the family size.
pub fn uniform_bound_trend(op: WeightedOperator, p: f64, cfg: &TrendConfig) -> Result<TrendReport> {
    if cfg.sizes.len() < 2 || cfg.sizes.contains(&0) {
        return Err(Error::InvalidParameter("trend needs at least two positive family sizes".into()));
    }
    let q = crate::norms::conjugate(p);
    let rule = Arc::new(WeightRule::new(p, cfg.order)?);
    let mut caps = Vec::with_capacity(cfg.sizes.len());
    for (s, &size) in cfg.sizes.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((s as u64 + 1) << 32));
        let families: Vec<Vec<Bump>> =
            (0..cfg.families).map(|_| (0..size).map(|_| Bump::random(&mut rng)).collect()).collect();
        let ratios = cfg.execution.map(families.len(), |i| -> Result<f64> {
            let fs: Vec<_> = families[i].iter().map(|b| move |t: f64| b.eval(t)).collect();
            let base = weighted_vector_norm(&WeightedFamily::sample(rule.clone(), q, &fs)?);
            let image = weighted_vector_norm(&apply_memberwise(op, &fs, rule.clone(), q, Execution::Sequential)?);
            Ok(image.as_f64() / base.as_f64())
        });
        let cap = ratios.into_iter().collect::<Result<Vec<f64>>>()?.into_iter().fold(0.0, f64::max);
        caps.push(cap);
    }
    let xs: Vec<f64> = cfg.sizes.iter().map(|&k| (k as f64).ln()).collect();
    let ys: Vec<f64> = caps.iter().map(|c| c.ln()).collect();
    let slope = least_squares_slope(&xs, &ys);
    let span = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max) - xs.iter().copied().fold(f64::INFINITY, f64::min);
    let saturation = caps[caps.len() - 1] / caps[caps.len() - 2];
    Ok(TrendReport { operator: op, p, q, sizes: cfg.sizes.clone(), caps, slope, growth: (slope * span).exp(), saturation })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
