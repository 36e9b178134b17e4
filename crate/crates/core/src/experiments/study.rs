use serde::Serialize;

use super::{verdict, NamedTestFunction, Verdict, Versions};
use crate::error::Result;
use crate::function::GridConfig;
use crate::norms::{lp_norm_of_samples, mixed_norm_of_samples, Exponents, NormValue};
use crate::report::{ser_sig17, sig17};
use crate::transform::{Expansion, GridMeta, Synthesizer, TruncationPolicy};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub err_pq: NormValue,
    pub err_lp: NormValue,
}

/// Errors of `S_{N_k, M_k} f - f` over the windows of a policy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub function_id: String,
    #[serde(serialize_with = "ser_sig17")]
    pub p: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub q: f64,
    #[serde(rename = "A", serialize_with = "ser_sig17")]
    pub a: f64,
    pub rows: Vec<StudyRow>,
    verdict: Verdict,
    pub grid: GridMeta,
    pub versions: Versions,
}

impl ConvergenceReport {
    /// Derived from the `err_pq` column (and non-finite entries of either column).
    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn err_pq(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.err_pq.as_f64()).collect()
    }

    pub fn err_lp(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.err_lp.as_f64()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per row: `N,M,err_pq,err_lp`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,M,err_pq,err_lp\n");
        let cell = |v: NormValue| v.finite().map_or_else(|| "divergent".to_string(), sig17);
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.n, r.m, cell(r.err_pq), cell(r.err_lp)));
        }
        out
    }
}

fn derive_verdict(rows: &[StudyRow]) -> Verdict {
    if rows.iter().any(|r| r.err_lp.is_divergent()) {
        return Verdict::Diverging;
    }
    let errs: Vec<f64> = rows.iter().map(|r| r.err_pq.as_f64()).collect();
    verdict(&errs)
}

/// Measures `||S_{N_k,M_k} f - f||_{p,q}` and `||S_{N_k,M_k} f - f||_{L^p(D)}`
/// for every window of `policy`, with `q` conjugate to `p`.
///
/// The function is analysed once on the grid of the policy envelope and every
/// error is measured on that same grid, using all angular modes it resolves.
pub fn convergence_study(
    f: &NamedTestFunction,
    p: f64,
    policy: &TruncationPolicy,
    cfg: &GridConfig,
) -> Result<ConvergenceReport> {
    let exps = Exponents::new(p)?;
    let env = policy.envelope();
    let func = f.function();
    let grid = cfg.grid_for(func.profile(), env.m, env.n)?;
    let samples = func.sample(&grid)?;
    let coeffs = Expansion::from_samples(&samples, grid.clone(), env.m, env.n)?.window(env.m, env.n)?;
    let synth = Synthesizer::new(&grid, env.m, env.n)?;
    let cap = grid.angular().count();
    let mut rows = Vec::with_capacity(policy.windows().len());
    for w in policy.windows() {
        let err = synth.samples(&coeffs, w.n, w.m)?.minus(&samples);
        rows.push(StudyRow {
            n: w.n,
            m: w.m,
            err_pq: mixed_norm_of_samples(&err, &grid, exps.p(), exps.q(), cap)?,
            err_lp: lp_norm_of_samples(&err, &grid, exps.p())?,
        });
    }
    Ok(ConvergenceReport {
        function_id: f.id().into(),
        p: exps.p(),
        q: exps.q(),
        a: policy.a(),
        verdict: derive_verdict(&rows),
        rows,
        grid: GridMeta::of(&grid),
        versions: Versions::default(),
    })
}
