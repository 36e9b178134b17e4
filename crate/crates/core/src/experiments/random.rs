use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::function::DiskFunction;
use crate::transform::{partial_sum, ModeCoefficients};

/// The generator used by every randomized study.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coefficients with independent real and imaginary parts uniform on `[-1, 1]`.
pub fn random_coefficients<R: Rng>(rng: &mut R, m_max: usize, n_max: usize) -> ModeCoefficients {
    ModeCoefficients::from_fn(m_max, n_max, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// A random finite eigen-sum in the window `(N, M)`, with its coefficients.
pub fn random_eigen_sum<R: Rng>(rng: &mut R, m_max: usize, n_max: usize) -> Result<(ModeCoefficients, DiskFunction)> {
    let c = random_coefficients(rng, m_max, n_max);
    let f = partial_sum(&c, n_max, m_max)?;
    Ok((c, f))
}

/// A random eigen-sum whose window is itself random, up to `(n_cap, m_cap)`.
pub fn random_band_limited<R: Rng>(rng: &mut R, m_cap: usize, n_cap: usize) -> Result<(ModeCoefficients, DiskFunction)> {
    let m = rng.gen_range(0..=m_cap);
    let n = rng.gen_range(1..=n_cap);
    random_eigen_sum(rng, m, n)
}
