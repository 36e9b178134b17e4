use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{ser_sig17, ser_vec_sig17};

/// Checkpoints at which partial sums are reported.
pub const TAIL_CHECKPOINTS: [u64; 5] = [100, 1_000, 10_000, 100_000, 1_000_000];

/// How the last decade of the sweep behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSignature {
    /// Last increment below `1e-3` of the running total.
    Flat,
    /// Consecutive decade increments shrink by less than 10%.
    Persistent,
    Undetermined,
}

/// Partial sums `sum_{k=2}^{K} c_k^q` with `c_k = k^{-1/2} (ln k)^{-2}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailStudy {
    #[serde(serialize_with = "ser_sig17")]
    pub q: f64,
    pub checkpoints: Vec<u64>,
    #[serde(serialize_with = "ser_vec_sig17")]
    pub partial_sums: Vec<f64>,
    /// Last increment over the final partial sum.
    #[serde(serialize_with = "ser_sig17")]
    pub last_increment_fraction: f64,
    /// Last increment over the one before it (`NaN` with fewer than three checkpoints).
    #[serde(serialize_with = "ser_sig17")]
    pub increment_ratio: f64,
    pub signature: TailSignature,
}

/// `c_k^q` summed in increasing `k` with compensation, reported at the
/// checkpoints up to `k_max` (and at `k_max` itself).
pub fn coefficient_tail_study(q: f64, k_max: u64) -> Result<TailStudy> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("tail exponent q must be positive, got {q}")));
    }
    if k_max < 4 {
        return Err(Error::InvalidParameter(format!("tail sweep needs K >= 4, got {k_max}")));
    }
    let mut checkpoints: Vec<u64> = TAIL_CHECKPOINTS.iter().copied().filter(|&c| c < k_max).collect();
    checkpoints.push(k_max);
    let mut sums = Vec::with_capacity(checkpoints.len());
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut next = 0;
    for k in 2..=k_max {
        let kf = k as f64;
        let term = (kf.powf(-0.5) * kf.ln().powi(-2)).powf(q);
        // Neumaier summation
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
        if k == checkpoints[next] {
            sums.push(sum + comp);
            next += 1;
        }
    }
    let n = sums.len();
    let last_inc = if n >= 2 { sums[n - 1] - sums[n - 2] } else { sums[0] };
    let increment_ratio = if n >= 3 { last_inc / (sums[n - 2] - sums[n - 3]) } else { f64::NAN };
    let fraction = last_inc / sums[n - 1];
    let signature = if fraction < 1e-3 {
        TailSignature::Flat
    } else if increment_ratio >= 0.9 {
        TailSignature::Persistent
    } else {
        TailSignature::Undetermined
    };
    Ok(TailStudy {
        q,
        checkpoints,
        partial_sums: sums,
        last_increment_fraction: fraction,
        increment_ratio,
        signature,
    })
}
