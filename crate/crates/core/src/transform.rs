//! Analysis `f -> a_{m,n}` and synthesis of the partial sums `S_{N,M} f`.
//!
//! Coefficients are normalized so the partial sums reproduce band-limited
//! functions exactly:
//!
//! ```text
//! a_{m,n} = <f_m, J_|m|(j_n^m .)>_{L^2(r dr)} / h_{m,n},   h_{m,n} = J_{|m|+1}(j_n^m)^2 / 2
//! ```
//!
//! where `f_m(r)` is the `m`-th angular Fourier coefficient of `t -> f(r, t)`.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_j, bessel_zeros, normalizer_at};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::function::{DiskFunction, DiskGrid, GridConfig, GridSamples};
use crate::quadrature::{dft_modes, synthesize_into, Integral, RadialGrid};
use crate::report::sig17;

/// The rectangular coefficient array `a_{m,n}`, `|m| <= M`, `1 <= n <= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeCoefficients {
    m_max: usize,
    n_max: usize,
    values: Vec<Complex64>,
}

impl ModeCoefficients {
    pub fn zeros(m_max: usize, n_max: usize) -> Self {
        ModeCoefficients { m_max, n_max, values: vec![Complex64::new(0.0, 0.0); (2 * m_max + 1) * n_max] }
    }

    pub fn from_fn<F: FnMut(i32, usize) -> Complex64>(m_max: usize, n_max: usize, mut f: F) -> Self {
        let mut c = Self::zeros(m_max, n_max);
        for m in -(m_max as i32)..=m_max as i32 {
            for n in 1..=n_max {
                let idx = c.index(m, n);
                c.values[idx] = f(m, n);
            }
        }
        c
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn index(&self, m: i32, n: usize) -> usize {
        (m + self.m_max as i32) as usize * self.n_max + (n - 1)
    }

    pub fn contains(&self, m: i32, n: usize) -> bool {
        m.unsigned_abs() as usize <= self.m_max && n >= 1 && n <= self.n_max
    }

    pub fn get(&self, m: i32, n: usize) -> Option<Complex64> {
        self.contains(m, n).then(|| self.values[self.index(m, n)])
    }

    pub fn set(&mut self, m: i32, n: usize, value: Complex64) -> Result<()> {
        if !self.contains(m, n) {
            return Err(self.window_error(n, m as i64));
        }
        let idx = self.index(m, n);
        self.values[idx] = value;
        Ok(())
    }

    /// `(m, n, a_{m,n})` in `m`-major order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, usize, Complex64)> + '_ {
        let n_max = self.n_max;
        let m_max = self.m_max as i32;
        self.values.iter().enumerate().map(move |(i, v)| ((i / n_max) as i32 - m_max, i % n_max + 1, *v))
    }

    fn window_error(&self, n: usize, m: i64) -> Error {
        Error::WindowOutOfRange { n, m, n_max: self.n_max, m_max: self.m_max }
    }

    pub fn check_window(&self, n: usize, m: usize) -> Result<()> {
        if n == 0 || n > self.n_max || m > self.m_max {
            return Err(self.window_error(n, m as i64));
        }
        Ok(())
    }

    /// The sub-array for the window `(N, M)`.
    pub fn restricted(&self, n: usize, m: usize) -> Result<ModeCoefficients> {
        self.check_window(n, m)?;
        Ok(ModeCoefficients::from_fn(m, n, |mm, nn| self.get(mm, nn).unwrap()))
    }

    /// `sum |a_{m,n}|^2 h_{m,n}`, the squared `L^2(disk)` norm of the series.
    pub fn energy(&self) -> Result<f64> {
        let mut total = 0.0;
        for m in -(self.m_max as i32)..=self.m_max as i32 {
            let zeros = bessel_zeros(m, self.n_max)?;
            for n in 1..=self.n_max {
                total += self.get(m, n).unwrap().norm_sqr() * normalizer_at(m, zeros[n - 1]);
            }
        }
        Ok(total)
    }

    /// CSV with columns `m,n,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,re,im\n");
        for (m, n, v) in self.iter() {
            out.push_str(&format!("{m},{n},{},{}\n", sig17(v.re), sig17(v.im)));
        }
        out
    }

    /// JSON mirror of [`Self::to_csv`] plus window metadata.
    pub fn to_json(&self, meta: &CoefficientMeta) -> String {
        #[derive(Serialize)]
        struct Entry {
            m: i32,
            n: usize,
            #[serde(serialize_with = "crate::report::ser_sig17")]
            re: f64,
            #[serde(serialize_with = "crate::report::ser_sig17")]
            im: f64,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            schema: &'static str,
            #[serde(rename = "M")]
            m_max: usize,
            #[serde(rename = "N")]
            n_max: usize,
            #[serde(rename = "A", serialize_with = "crate::report::ser_opt_sig17")]
            a: Option<f64>,
            grid: &'a GridMeta,
            coefficients: Vec<Entry>,
        }
        let doc = Doc {
            schema: crate::report::SCHEMA_VERSION,
            m_max: self.m_max,
            n_max: self.n_max,
            a: meta.a,
            grid: &meta.grid,
            coefficients: self.iter().map(|(m, n, v)| Entry { m, n, re: v.re, im: v.im }).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("coefficient document serializes")
    }
}

/// Grid sizes recorded next to exported data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridMeta {
    pub radial_order: usize,
    pub radial_nodes: usize,
    pub angular_count: usize,
}

impl GridMeta {
    pub fn of(grid: &DiskGrid) -> Self {
        GridMeta {
            radial_order: grid.radial().order(),
            radial_nodes: grid.radial().len(),
            angular_count: grid.angular().count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMeta {
    pub a: Option<f64>,
    pub grid: GridMeta,
}

/// Radial profiles `J_|m|(j_n^m r_i)` for `|m| <= M`, `n <= N` on a radial grid.
#[derive(Debug, Clone)]
pub struct BasisTable {
    m_max: usize,
    n_max: usize,
    nodes: usize,
    values: Vec<f64>,
}

impl BasisTable {
    pub fn new(grid: &RadialGrid, m_max: usize, n_max: usize, exec: Execution) -> Result<Self> {
        let zeros: Vec<_> = (0..=m_max).map(|m| bessel_zeros(m as i32, n_max)).collect::<Result<_>>()?;
        let nodes = grid.nodes();
        let cols = exec.map((m_max + 1) * n_max, |c| {
            let (m, n) = (c / n_max, c % n_max);
            let j = zeros[m][n];
            nodes.iter().map(|&r| bessel_j(m as i32, j * r)).collect::<Vec<_>>()
        });
        Ok(BasisTable { m_max, n_max, nodes: nodes.len(), values: cols.concat() })
    }

    /// `J_|m|(j_n^m r_i)` over the nodes.
    pub fn profile(&self, m: i32, n: usize) -> &[f64] {
        let m = m.unsigned_abs() as usize;
        assert!(m <= self.m_max && n >= 1 && n <= self.n_max);
        let start = (m * self.n_max + n - 1) * self.nodes;
        &self.values[start..start + self.nodes]
    }
}

/// Coefficients of one function, computed on demand and cached.
///
/// The grid is fixed by the capacity window given at construction, so every
/// entry is the same quadrature regardless of which window first asked for it.
pub struct Expansion {
    grid: DiskGrid,
    capacity: (usize, usize),
    // per radial node: f_m(r_i) for m = -M..=M
    modes: Vec<Vec<Complex64>>,
    cache: RwLock<BTreeMap<(i32, usize), Complex64>>,
}

impl Expansion {
    /// Prepares coefficients for windows up to `(N, M) = (n_cap, m_cap)`.
    pub fn new(f: &DiskFunction, m_cap: usize, n_cap: usize, cfg: &GridConfig) -> Result<Self> {
        let grid = cfg.grid_for(f.profile(), m_cap, n_cap)?;
        Self::on_grid(f, grid, m_cap, n_cap)
    }

    pub fn on_grid(f: &DiskFunction, grid: DiskGrid, m_cap: usize, n_cap: usize) -> Result<Self> {
        grid.angular().check_alias_free(m_cap)?;
        let samples = f.sample(&grid)?;
        Self::from_samples(&samples, grid, m_cap, n_cap)
    }

    /// From values already sampled on `grid`.
    pub fn from_samples(samples: &GridSamples, grid: DiskGrid, m_cap: usize, n_cap: usize) -> Result<Self> {
        grid.angular().check_alias_free(m_cap)?;
        let twiddles = grid.angular().twiddles();
        let modes = grid.execution().map(samples.radial_len(), |i| dft_modes(samples.row(i), &twiddles, m_cap));
        Ok(Expansion { grid, capacity: (m_cap, n_cap), modes, cache: RwLock::new(BTreeMap::new()) })
    }

    pub fn grid(&self) -> &DiskGrid {
        &self.grid
    }

    /// `f_m(r_i)` at every radial node.
    pub fn angular_mode(&self, m: i32) -> Vec<Complex64> {
        let offset = (m + self.capacity.0 as i32) as usize;
        self.modes.iter().map(|row| row[offset]).collect()
    }

    /// Coefficients for the window `(N, M)`; only entries not computed before are integrated.
    pub fn window(&self, m_max: usize, n_max: usize) -> Result<ModeCoefficients> {
        if m_max > self.capacity.0 || n_max > self.capacity.1 || n_max == 0 {
            return Err(Error::WindowOutOfRange {
                n: n_max,
                m: m_max as i64,
                n_max: self.capacity.1,
                m_max: self.capacity.0,
            });
        }
        let missing: Vec<(i32, usize)> = {
            let cache = self.cache.read().expect("coefficient cache poisoned");
            (-(m_max as i32)..=m_max as i32)
                .flat_map(|m| (1..=n_max).map(move |n| (m, n)))
                .filter(|k| !cache.contains_key(k))
                .collect()
        };
        if !missing.is_empty() {
            let computed = self.grid.execution().map(missing.len(), |i| {
                let (m, n) = missing[i];
                self.integrate_mode(m, n).map(|v| ((m, n), v))
            });
            let mut cache = self.cache.write().expect("coefficient cache poisoned");
            for entry in computed {
                let (k, v) = entry?;
                cache.insert(k, v);
            }
        }
        let cache = self.cache.read().expect("coefficient cache poisoned");
        Ok(ModeCoefficients::from_fn(m_max, n_max, |m, n| cache[&(m, n)]))
    }

    fn integrate_mode(&self, m: i32, n: usize) -> Result<Complex64> {
        let zero = bessel_zeros(m, n)?[n - 1];
        let radial = self.grid.radial();
        let offset = (m + self.capacity.0 as i32) as usize;
        let mut re = Vec::with_capacity(radial.len());
        let mut im = Vec::with_capacity(radial.len());
        for (row, &r) in self.modes.iter().zip(radial.nodes()) {
            let v = row[offset] * bessel_j(m, zero * r);
            re.push(v.re);
            im.push(v.im);
        }
        let h = normalizer_at(m, zero);
        match (radial.integrate(&re), radial.integrate(&im)) {
            (Integral::Finite(a), Integral::Finite(b)) if a.is_finite() && b.is_finite() => {
                Ok(Complex64::new(a, b) / h)
            }
            _ => Err(Error::NonFiniteCoefficient { m: m as i64, n }),
        }
    }
}

/// `a_{m,n}` for `|m| <= M`, `1 <= n <= N`.
pub fn analyze(f: &DiskFunction, m_max: usize, n_max: usize, cfg: &GridConfig) -> Result<ModeCoefficients> {
    Expansion::new(f, m_max, n_max, cfg)?.window(m_max, n_max)
}

/// `S_{N,m} f_m(r_i) = sum_{n <= N} a_{m,n} J_|m|(j_n^m r_i)` at each node.
pub fn radial_partial_sum(coeffs: &ModeCoefficients, m: i32, n_max: usize, grid: &RadialGrid) -> Result<Vec<Complex64>> {
    if !coeffs.contains(m, 1) || n_max == 0 || n_max > coeffs.n_max() {
        return Err(Error::WindowOutOfRange { n: n_max, m: m as i64, n_max: coeffs.n_max(), m_max: coeffs.m_max() });
    }
    let zeros = bessel_zeros(m, n_max)?;
    Ok(grid
        .nodes()
        .iter()
        .map(|&r| (1..=n_max).map(|n| coeffs.get(m, n).unwrap() * bessel_j(m, zeros[n - 1] * r)).sum())
        .collect())
}

/// `S_{N,M} f` as a function on the disk.
pub fn partial_sum(coeffs: &ModeCoefficients, n_max: usize, m_max: usize) -> Result<DiskFunction> {
    coeffs.check_window(n_max, m_max)?;
    Ok(DiskFunction::series(Arc::new(coeffs.clone()), n_max, m_max))
}

/// Evaluates partial sums on a fixed grid, reusing one basis table across windows.
pub struct Synthesizer {
    grid: DiskGrid,
    table: BasisTable,
    twiddles: Vec<Complex64>,
}

impl Synthesizer {
    pub fn new(grid: &DiskGrid, m_max: usize, n_max: usize) -> Result<Self> {
        let table = BasisTable::new(grid.radial(), m_max, n_max, grid.execution())?;
        Ok(Synthesizer { grid: grid.clone(), table, twiddles: grid.angular().twiddles() })
    }

    pub fn grid(&self) -> &DiskGrid {
        &self.grid
    }

    /// Samples of `S_{N,M} f` on the grid.
    pub fn samples(&self, coeffs: &ModeCoefficients, n_max: usize, m_max: usize) -> Result<GridSamples> {
        coeffs.check_window(n_max, m_max)?;
        if n_max > self.table.n_max || m_max > self.table.m_max {
            return Err(Error::WindowOutOfRange {
                n: n_max,
                m: m_max as i64,
                n_max: self.table.n_max,
                m_max: self.table.m_max,
            });
        }
        let nr = self.grid.radial().len();
        let k = self.grid.angular().count();
        let mut values = vec![Complex64::new(0.0, 0.0); nr * k];
        self.grid.execution().for_each_chunk(&mut values, k, |i, row| {
            let radial: Vec<Complex64> = (-(m_max as i32)..=m_max as i32)
                .map(|m| (1..=n_max).map(|n| coeffs.get(m, n).unwrap() * self.table.profile(m, n)[i]).sum())
                .collect();
            synthesize_into(&radial, m_max as i64, &self.twiddles, row);
        });
        Ok(GridSamples::from_values(values, nr, k))
    }
}

/// A radial/angular truncation `(N, M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
}

/// Nested windows obeying `N_k >= A M_k + 1` with strictly increasing `M_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationPolicy {
    #[serde(rename = "A")]
    a: f64,
    windows: Vec<Window>,
}

/// Default policy constant.
pub const DEFAULT_POLICY_CONSTANT: f64 = 1.0;

impl TruncationPolicy {
    pub fn new(a: f64, windows: Vec<Window>) -> Result<Self> {
        check_constant(a)?;
        if windows.is_empty() {
            return Err(Error::EmptyPolicy);
        }
        for w in &windows {
            validate_pair(w.n, w.m, a)?;
        }
        if windows.windows(2).any(|p| p[1].m <= p[0].m) {
            return Err(Error::PolicyOrdering);
        }
        Ok(TruncationPolicy { a, windows })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    /// The largest `N` and `M` over all windows.
    pub fn envelope(&self) -> Window {
        Window {
            n: self.windows.iter().map(|w| w.n).max().unwrap_or(0),
            m: self.windows.iter().map(|w| w.m).max().unwrap_or(0),
        }
    }
}

fn check_constant(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidParameter(format!("policy constant A must be positive, got {a}")));
    }
    Ok(())
}

/// Checks `N >= A M + 1`.
pub fn validate_pair(n: usize, m: usize, a: f64) -> Result<()> {
    check_constant(a)?;
    if (n as f64) < a * m as f64 + 1.0 {
        return Err(Error::PolicyViolation { n, m, a });
    }
    Ok(())
}

/// `(N_k, M_k) = (ceil(A k + 1), k)` for `k = 0..=M_max`.
pub fn truncation_pairs(a: f64, m_max: usize) -> Result<TruncationPolicy> {
    check_constant(a)?;
    let windows = (0..=m_max).map(|k| Window { n: (a * k as f64 + 1.0).ceil() as usize, m: k }).collect();
    TruncationPolicy::new(a, windows)
}
