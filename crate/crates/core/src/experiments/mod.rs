//! Desk-scale studies: convergence of partial sums under a truncation policy,
//! Wing's radial counterexample, coefficient tails, torus truncation sets and
//! the summary table across exponent ranges.

mod random;
mod registry;
mod study;
mod table;
mod tail;
mod torus;
mod wing;

use serde::Serialize;

pub use random::{random_band_limited, random_coefficients, random_eigen_sum, seeded_rng};
pub use registry::{Membership, NamedTestFunction, Registry, Suite};
pub use study::{convergence_study, ConvergenceReport, StudyRow};
pub use table::{convergence_table, ConvergenceTable, Observed, PaperEntry, TableEntry, TableRow};
pub use tail::{coefficient_tail_study, TailSignature, TailStudy, TAIL_CHECKPOINTS};
pub use torus::{delta_like, torus_partial_sum, torus_truncation, TorusCoefficients, TorusMode};
pub use wing::{wing_counterexample, wing_lp_norm, WingRow, WingTable};

/// Observed behaviour of an error sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converging,
    Stalling,
    Diverging,
}

/// Errors at or below `NOISE_FLOOR * max(1, first)` count as exact reproduction.
pub const NOISE_FLOOR: f64 = 1e-9;

/// Classifies an error sequence ordered from the first to the last window.
///
/// * diverging: some error is non-finite, or the final error is at least twice
///   the smallest one;
/// * converging: the final error is at most half the first, and each of the
///   last three errors is at most 5% above its predecessor;
/// * stalling: anything else.
///
/// Errors below the noise floor are clamped to it before comparing, so
/// sequences that reach exact reproduction are not read as oscillating.
pub fn verdict(errors: &[f64]) -> Verdict {
    if errors.is_empty() || errors.iter().any(|e| !e.is_finite()) {
        return Verdict::Diverging;
    }
    let floor = NOISE_FLOOR * errors[0].max(1.0);
    let e: Vec<f64> = errors.iter().map(|&x| x.max(floor)).collect();
    let last = e[e.len() - 1];
    let min = e.iter().copied().fold(f64::INFINITY, f64::min);
    if last >= 2.0 * min && last > min {
        return Verdict::Diverging;
    }
    let tail = &e[e.len().saturating_sub(3)..];
    let settled = tail.windows(2).all(|w| w[1] <= 1.05 * w[0]);
    if last <= 0.5 * e[0] && settled {
        Verdict::Converging
    } else {
        Verdict::Stalling
    }
}

/// Crate and schema versions recorded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Versions {
    pub schema: &'static str,
    pub bessel_fourier: &'static str,
}

impl Default for Versions {
    fn default() -> Self {
        Versions { schema: crate::report::SCHEMA_VERSION, bessel_fourier: env!("CARGO_PKG_VERSION") }
    }
}
