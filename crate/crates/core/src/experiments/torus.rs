use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Finitely supported Fourier coefficients on `Z^2`.
pub type TorusCoefficients = BTreeMap<(i64, i64), Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusMode {
    /// `k_1^2 + k_2^2 <= N^2`.
    Spherical,
    /// `max(|k_1|, |k_2|) <= N`.
    Cubic,
}

impl TorusMode {
    pub fn keeps(self, k: (i64, i64), n: u64) -> bool {
        let n = n as i128;
        let (a, b) = (k.0 as i128, k.1 as i128);
        match self {
            TorusMode::Spherical => a * a + b * b <= n * n,
            TorusMode::Cubic => a.abs() <= n && b.abs() <= n,
        }
    }
}

/// The coefficients whose frequencies lie in the truncation set of radius `n`.
pub fn torus_truncation(fhat: &TorusCoefficients, n: u64, mode: TorusMode) -> TorusCoefficients {
    fhat.iter().filter(|(k, _)| mode.keeps(**k, n)).map(|(k, v)| (*k, *v)).collect()
}

/// `sum_k c_k e^{2 pi i (k_1 x + k_2 y)}` with `x, y` in turns.
pub fn torus_partial_sum(coeffs: &TorusCoefficients, x: f64, y: f64) -> Complex64 {
    coeffs
        .iter()
        .map(|(&(a, b), c)| {
            let turns = (a as f64 * x + b as f64 * y).rem_euclid(1.0);
            c * Complex64::from_polar(1.0, 2.0 * PI * turns)
        })
        .sum()
}

/// Unit coefficients on the box `|k_j| <= radius`, a Dirichlet-kernel
/// approximation of the point mass.
pub fn delta_like(radius: u64) -> TorusCoefficients {
    let r = radius as i64;
    let mut out = TorusCoefficients::new();
    for a in -r..=r {
        for b in -r..=r {
            out.insert((a, b), Complex64::new(1.0, 0.0));
        }
    }
    out
}
