use num_complex::Complex64;
use serde::Serialize;

use super::{verdict, Verdict, Versions};
use crate::error::{Error, Result};
use crate::function::{largest_zero, DiskFunction, DiskGrid, GridConfig, RadialProfile};
use crate::norms::{radial_lp_norm, Exponents, NormValue};
use crate::quadrature::{AngularGrid, RadialGrid};
use crate::report::ser_sig17;
use crate::transform::{radial_partial_sum, Expansion, GridMeta};

/// Radial oversampling of the norm grid: `|S_N f|^p` has a kink at every sign
/// change, which panel rules only resolve algebraically.
const NORM_OVERSAMPLE: usize = 8;

/// Closed form of `||r^{-3/2}||_{L^p(r dr)} = (2 - 3p/2)^{-1/p}`, infinite for `p >= 4/3`.
pub fn wing_lp_norm(p: f64) -> NormValue {
    let e = 2.0 - 1.5 * p;
    if e > 0.0 {
        NormValue::Finite(e.powf(-1.0 / p))
    } else {
        NormValue::Divergent
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WingRow {
    #[serde(rename = "N")]
    pub n: usize,
    /// `||S_N f||_{L^p(r dr)}`.
    pub partial_norm: NormValue,
    /// `||S_N f - f||_{L^p(r dr)}`.
    pub error: NormValue,
}

/// Radial partial sums of `f(r) = r^{-3/2}` in the `m = 0` Bessel series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WingTable {
    #[serde(serialize_with = "ser_sig17")]
    pub p: f64,
    /// `p >= 4/3`: `f` is not in `L^p(r dr)` and the errors are meaningless.
    pub outside_lp: bool,
    pub closed_form_norm: NormValue,
    pub quadrature_norm: NormValue,
    pub rows: Vec<WingRow>,
    /// The convergence rule applied to the `error` column.
    pub verdict: Verdict,
    pub grid: GridMeta,
    pub versions: Versions,
}

impl WingTable {
    /// `N,partial_norm,error` per row.
    pub fn to_csv(&self) -> String {
        let cell = |v: NormValue| v.finite().map_or_else(|| "divergent".to_string(), crate::report::sig17);
        let mut out = String::from("N,partial_norm,error\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, cell(r.partial_norm), cell(r.error)));
        }
        out
    }
}

/// Norms of `S_N f` and `S_N f - f` for `f = r^{-3/2}` and each `N` in `ns`.
pub fn wing_counterexample(p: f64, ns: &[usize], cfg: &GridConfig) -> Result<WingTable> {
    let exps = Exponents::new(p)?;
    let n_max = ns.iter().copied().max().ok_or_else(|| Error::InvalidParameter("no radial truncations given".into()))?;
    if ns.contains(&0) {
        return Err(Error::ZeroIndex);
    }
    let f = DiskFunction::radial(RadialProfile::SingularAtZero, |r| r.powf(-1.5));
    let base = cfg.radial_for(RadialProfile::SingularAtZero, largest_zero(0, n_max)?)?;
    let radial = RadialGrid::graded(NORM_OVERSAMPLE * base.order(), cfg.graded_depth)?;
    let grid = DiskGrid::new(radial, AngularGrid::new(1)?).with_execution(cfg.execution);
    let coeffs = Expansion::on_grid(&f, grid.clone(), 0, n_max)?.window(0, n_max)?;
    let target: Vec<Complex64> = grid.radial().nodes().iter().map(|&r| Complex64::new(r.powf(-1.5), 0.0)).collect();
    let rows = ns
        .iter()
        .map(|&n| {
            let s = radial_partial_sum(&coeffs, 0, n, grid.radial())?;
            let diff: Vec<Complex64> = s.iter().zip(&target).map(|(a, b)| a - b).collect();
            Ok(WingRow {
                n,
                partial_norm: radial_lp_norm(&s, grid.radial(), exps.p())?,
                error: radial_lp_norm(&diff, grid.radial(), exps.p())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let errors: Vec<f64> = rows.iter().map(|r| r.error.as_f64()).collect();
    Ok(WingTable {
        p,
        outside_lp: p >= 4.0 / 3.0,
        closed_form_norm: wing_lp_norm(p),
        quadrature_norm: radial_lp_norm(&target, grid.radial(), p)?,
        verdict: verdict(&errors),
        rows,
        grid: GridMeta::of(&grid),
        versions: Versions::default(),
    })
}
