use serde::Serialize;

use super::{convergence_study, ConvergenceReport, Registry, Verdict, Versions};
use crate::error::{Error, Result};
use crate::function::GridConfig;
use crate::report::ser_sig17;
use crate::transform::TruncationPolicy;

/// The published expectation for an exponent range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PaperEntry {
    /// Convergence fails for some `f` in `L^p`.
    No,
    /// Convergence holds for every `f` in `L^p`.
    Yes,
    /// Convergence holds for `f` in `L^p_rad(l^q_ang)`.
    MixedMembers,
    /// Open.
    Unknown,
}

impl PaperEntry {
    pub fn as_str(self) -> &'static str {
        match self {
            PaperEntry::No => "no",
            PaperEntry::Yes => "yes",
            PaperEntry::MixedMembers => "mixed_members",
            PaperEntry::Unknown => "unknown",
        }
    }

    pub fn for_p(p: f64) -> (&'static str, PaperEntry) {
        if p < 4.0 / 3.0 {
            ("[1,4/3)", PaperEntry::No)
        } else if p < 2.0 {
            ("[4/3,2)", PaperEntry::Unknown)
        } else if p == 2.0 {
            ("2", PaperEntry::Yes)
        } else if p < 4.0 {
            ("(2,4)", PaperEntry::MixedMembers)
        } else if p == 4.0 {
            ("4", PaperEntry::Unknown)
        } else {
            ("(4,inf)", PaperEntry::No)
        }
    }
}

/// What the registered functions did at one exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Observed {
    /// Every `L^p` member converged.
    AllConverge,
    /// Every mixed-space member converged, some other `L^p` member did not.
    MixedMembersConverge,
    /// Some mixed-space member failed to converge.
    SomeFail,
}

impl Observed {
    pub fn as_str(self) -> &'static str {
        match self {
            Observed::AllConverge => "all_converge",
            Observed::MixedMembersConverge => "mixed_members_converge",
            Observed::SomeFail => "some_fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableEntry {
    pub function_id: String,
    pub in_lp: bool,
    pub in_mixed: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    #[serde(serialize_with = "ser_sig17")]
    pub p: f64,
    pub range: &'static str,
    pub paper: PaperEntry,
    pub observed: Observed,
    /// `None` where the published entry makes no claim.
    pub matches_paper: Option<bool>,
    pub entries: Vec<TableEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    #[serde(rename = "A", serialize_with = "ser_sig17")]
    pub a: f64,
    pub rows: Vec<TableRow>,
    pub versions: Versions,
    #[serde(skip)]
    pub reports: Vec<ConvergenceReport>,
}

impl ConvergenceTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// `p,range,paper,observed,matches_paper` per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,range,paper,observed,matches_paper\n");
        for r in &self.rows {
            let matches = r.matches_paper.map_or("n/a".to_string(), |m| m.to_string());
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                crate::report::sig17(r.p),
                r.range,
                r.paper.as_str(),
                r.observed.as_str(),
                matches
            ));
        }
        out
    }
}

fn classify(entries: &[TableEntry]) -> Observed {
    let converged = |e: &&TableEntry| e.verdict == Verdict::Converging;
    let mixed_ok = entries.iter().filter(|e| e.in_mixed).all(|e| converged(&e));
    let lp_ok = entries.iter().filter(|e| e.in_lp).all(|e| converged(&e));
    match (lp_ok, mixed_ok) {
        (true, _) => Observed::AllConverge,
        (false, true) => Observed::MixedMembersConverge,
        (false, false) => Observed::SomeFail,
    }
}

fn agrees(paper: PaperEntry, observed: Observed) -> Option<bool> {
    match paper {
        PaperEntry::Unknown => None,
        PaperEntry::Yes => Some(observed == Observed::AllConverge),
        PaperEntry::MixedMembers => Some(observed != Observed::SomeFail),
        PaperEntry::No => Some(observed != Observed::AllConverge),
    }
}

/// Runs the convergence study for every registered function at every `p`
/// and classifies each exponent against the published table.
pub fn convergence_table(
    registry: &Registry,
    policy: &TruncationPolicy,
    ps: &[f64],
    cfg: &GridConfig,
) -> Result<ConvergenceTable> {
    if ps.is_empty() {
        return Err(Error::InvalidParameter("no exponents given".into()));
    }
    let functions: Vec<_> = registry.iter().collect();
    let jobs: Vec<(usize, usize)> = (0..ps.len()).flat_map(|i| (0..functions.len()).map(move |j| (i, j))).collect();
    let reports = cfg
        .execution
        .map(jobs.len(), |k| {
            let (i, j) = jobs[k];
            convergence_study(functions[j], ps[i], policy, cfg)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let rows = ps
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let entries: Vec<TableEntry> = functions
                .iter()
                .enumerate()
                .map(|(j, f)| TableEntry {
                    function_id: f.id().into(),
                    in_lp: f.membership().in_lp(p),
                    in_mixed: f.membership().in_mixed(p),
                    verdict: reports[i * functions.len() + j].verdict(),
                })
                .collect();
            let (range, paper) = PaperEntry::for_p(p);
            let observed = classify(&entries);
            TableRow { p, range, paper, observed, matches_paper: agrees(paper, observed), entries }
        })
        .collect();
    Ok(ConvergenceTable { a: policy.a(), rows, versions: Versions::default(), reports })
}
