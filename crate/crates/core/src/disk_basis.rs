//! Dirichlet eigenfunctions of the Laplacian on the unit disk,
//! `e^{2 pi i m t} J_|m|(j_n^|m| r)`, with the angle `t` measured in turns.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_j, bessel_zero};
use crate::error::{Error, Result};

/// Eigenfunction label: angular order `m` (any sign) and radial index `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    pub m: i32,
    pub n: usize,
}

impl ModeIndex {
    pub fn new(m: i32, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(ModeIndex { m, n })
    }

    /// The zero `j_n^|m|` scaling this mode's radial profile.
    pub fn zero(&self) -> Result<f64> {
        Ok(bessel_zero(self.m, self.n)?.value)
    }
}

/// A point `(r, t)` of the closed disk; `t` in turns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    r: f64,
    t: f64,
}

impl PolarPoint {
    pub fn new(r: f64, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParameter(format!("radius {r} outside [0, 1]")));
        }
        if !(0.0..1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!("angle {t} outside [0, 1)")));
        }
        Ok(PolarPoint { r, t })
    }

    /// Reduces any angle into `[0, 1)`.
    pub fn wrapped(r: f64, t: f64) -> Result<Self> {
        let t = t.rem_euclid(1.0);
        Self::new(r, if t >= 1.0 { 0.0 } else { t })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// `e^{2 pi i m t}`, with `m t` reduced mod 1 before the exponential.
pub fn angular_phase(m: i32, t: f64) -> Complex64 {
    let turns = (m as f64 * t).rem_euclid(1.0);
    Complex64::from_polar(1.0, 2.0 * PI * turns)
}

pub fn eigenfunction_eval(idx: ModeIndex, pt: PolarPoint) -> Result<Complex64> {
    let j = idx.zero()?;
    Ok(angular_phase(idx.m, pt.t) * bessel_j(idx.m, j * pt.r))
}

/// `4 pi^2 m^2 + (j_n^|m|)^2`.
///
/// This is the value attached to the mode labels in the source literature;
/// note that the Dirichlet eigenvalue of the eigenfunction itself is
/// `(j_n^|m|)^2` (angles measured in turns do not change the Laplacian).
pub fn eigenvalue(idx: ModeIndex) -> Result<f64> {
    let j = idx.zero()?;
    let m = idx.m as f64;
    Ok(4.0 * PI * PI * m * m + j * j)
}
