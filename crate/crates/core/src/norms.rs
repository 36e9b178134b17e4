//! The disk norm `||f||_{L^p(D)}` and the mixed norms `||f||_{p,2}`, `||f||_{p,q}`.
//!
//! All three integrate a per-radius quantity against `r dr`:
//!
//! * `L^p(D)`: `int_0^1 |f(r, t)|^p dt`;
//! * `(p, q)`: `(sum_m |f_m(r)|^q)^{p/q}` over the angular Fourier coefficients.
//!
//! Mixed norms only see the angular modes the grid resolves. For functions
//! band-limited below the cap this is exact; otherwise the value is a lower
//! bound of the true norm.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::function::{DiskFunction, DiskGrid, GridSamples};
use crate::quadrature::{dft_modes, Integral, RadialGrid};
use crate::report::ser_sig17;

/// A norm that may be infinite. Divergence is an outcome, not an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormValue {
    Finite(f64),
    Divergent,
}

impl NormValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            NormValue::Finite(v) => Some(v),
            NormValue::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        self == NormValue::Divergent
    }

    /// Finite values as is, divergent as `+inf`.
    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    fn root(integral: Integral, p: f64) -> NormValue {
        match integral {
            Integral::Finite(v) if v.is_finite() => NormValue::Finite(v.max(0.0).powf(1.0 / p)),
            _ => NormValue::Divergent,
        }
    }
}

impl Serialize for NormValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NormValue::Finite(v) => ser_sig17(v, s),
            NormValue::Divergent => s.serialize_str("divergent"),
        }
    }
}

/// Conjugate exponents `1/p + 1/q = 1`; `q` is always derived from `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    p: f64,
}

impl Exponents {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("exponent p must be finite and >= 1, got {p}")));
        }
        Ok(Exponents { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `p / (p - 1)`, infinite at `p = 1`.
    pub fn q(&self) -> f64 {
        conjugate(self.p)
    }
}

pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

fn check_p(p: f64) -> Result<()> {
    Exponents::new(p).map(|_| ())
}

fn check_q(q: f64) -> Result<()> {
    if !(q >= 1.0) {
        return Err(Error::InvalidParameter(format!("exponent q must be >= 1, got {q}")));
    }
    Ok(())
}

/// `||f||_{L^p(D)}` from samples.
pub fn lp_norm_of_samples(samples: &GridSamples, grid: &DiskGrid, p: f64) -> Result<NormValue> {
    check_p(p)?;
    let k = samples.angular_len() as f64;
    let per_radius = grid.execution().map(samples.radial_len(), |i| {
        let row: Vec<f64> = samples.row(i).iter().map(|v| v.norm().powf(p)).collect();
        pairwise_sum(&row) / k
    });
    Ok(NormValue::root(grid.radial().integrate(&per_radius), p))
}

/// Modes available for a cap: `|m| <= min(cap, (K-1)/2)`, plus the Nyquist bin
/// `m = K/2` when `K` is even and the cap reaches it.
fn resolved_modes(row: &[Complex64], twiddles: &[Complex64], m_cap: usize) -> Vec<Complex64> {
    let k = row.len();
    let inner = m_cap.min((k - 1) / 2);
    let mut modes = dft_modes(row, twiddles, inner);
    if k % 2 == 0 && m_cap >= k / 2 {
        let nyquist = row.iter().enumerate().map(|(j, v)| if j % 2 == 0 { *v } else { -v }).sum::<Complex64>() / k as f64;
        modes.push(nyquist);
    }
    modes
}

fn lq_power(modes: &[Complex64], q: f64, p: f64) -> f64 {
    if q.is_infinite() {
        return modes.iter().map(|c| c.norm()).fold(0.0, f64::max).powf(p);
    }
    let terms: Vec<f64> = modes.iter().map(|c| c.norm().powf(q)).collect();
    pairwise_sum(&terms).powf(p / q)
}

/// `||f||_{p,q}` from samples, using angular modes up to `m_cap`.
pub fn mixed_norm_of_samples(samples: &GridSamples, grid: &DiskGrid, p: f64, q: f64, m_cap: usize) -> Result<NormValue> {
    check_p(p)?;
    check_q(q)?;
    let twiddles = grid.angular().twiddles();
    let per_radius = grid.execution().map(samples.radial_len(), |i| {
        lq_power(&resolved_modes(samples.row(i), &twiddles, m_cap), q, p)
    });
    Ok(NormValue::root(grid.radial().integrate(&per_radius), p))
}

/// `||f||_{L^p(D)} = [int_0^1 int_0^1 |f(r,t)|^p dt r dr]^{1/p}`.
pub fn lp_disk_norm(f: &DiskFunction, p: f64, grid: &DiskGrid) -> Result<NormValue> {
    lp_norm_of_samples(&f.sample(grid)?, grid, p)
}

/// `||f||_{p,2} = [int_0^1 (sum_m |f_m(r)|^2)^{p/2} r dr]^{1/p}`.
pub fn mixed_norm_p2(f: &DiskFunction, p: f64, m_cap: usize, grid: &DiskGrid) -> Result<NormValue> {
    mixed_norm_of_samples(&f.sample(grid)?, grid, p, 2.0, m_cap)
}

/// `||f||_{p,q}` with `q` conjugate to `p`.
pub fn mixed_norm_pq(f: &DiskFunction, exps: Exponents, m_cap: usize, grid: &DiskGrid) -> Result<NormValue> {
    mixed_norm_of_samples(&f.sample(grid)?, grid, exps.p(), exps.q(), m_cap)
}

/// `(||f||_{L^p(D)}, ||f||_{p,q})`; for `p >= 2` the first never exceeds the second.
pub fn rhy_gap(f: &DiskFunction, exps: Exponents, grid: &DiskGrid) -> Result<(NormValue, NormValue)> {
    if exps.p() < 2.0 {
        return Err(Error::InvalidParameter(format!(
            "the mixed norm dominates the disk norm only for p >= 2, got p = {}",
            exps.p()
        )));
    }
    let samples = f.sample(grid)?;
    let cap = grid.angular().count();
    Ok((
        lp_norm_of_samples(&samples, grid, exps.p())?,
        mixed_norm_of_samples(&samples, grid, exps.p(), exps.q(), cap)?,
    ))
}

/// `[int_0^1 |g(r)|^p r dr]^{1/p}` for a radial profile sampled on `grid`.
pub fn radial_lp_norm(values: &[Complex64], grid: &RadialGrid, p: f64) -> Result<NormValue> {
    check_p(p)?;
    let powers: Vec<f64> = values.iter().map(|v| v.norm().powf(p)).collect();
    Ok(NormValue::root(grid.integrate(&powers), p))
}

pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}
