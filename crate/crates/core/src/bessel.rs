//! Bessel functions of the first kind of integer order, their derivatives,
//! their positive zeros and the radial normalization constants of the disk
//! eigenfunctions.
//!
//! Orders are signed integers and evaluation always uses `|m|`, so
//! `bessel_j(m, x) == bessel_j(-m, x)` bit for bit.
//!
//! Three evaluation branches cover the supported range:
//!
//! * the ascending power series, used while its terms decrease from the first
//!   one (`x^2/4 <= |m| + 1`), so there is no cancellation;
//! * Miller's backward recurrence normalized by `J_0 + 2 sum J_2k = 1`;
//! * the Hankel asymptotic expansion once `x >= max(40, m^2)`, where the
//!   recurrence would need thousands of steps.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Largest supported `|m|`.
pub const MAX_ORDER: u32 = 64;
/// Largest supported zero index.
pub const MAX_ZERO_INDEX: usize = 4096;

/// A positive zero `j_n^m` of `J_|m|`, indexed from `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselZero {
    pub order: i32,
    pub index: usize,
    pub value: f64,
}

/// `J_|m|(x)`. Negative arguments use `J_m(-x) = (-1)^m J_m(x)`.
pub fn bessel_j(m: i32, x: f64) -> f64 {
    let m = m.unsigned_abs();
    if x < 0.0 {
        let v = bessel_j_abs(m, -x);
        return if m % 2 == 1 { -v } else { v };
    }
    bessel_j_abs(m, x)
}

/// `d/dx J_|m|(x)` via `J_m' = (J_{m-1} - J_{m+1}) / 2` (and `J_0' = -J_1`).
pub fn bessel_j_prime(m: i32, x: f64) -> f64 {
    let m = m.unsigned_abs() as i32;
    if m == 0 {
        -bessel_j(1, x)
    } else {
        0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x))
    }
}

fn bessel_j_abs(m: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if !x.is_finite() {
        return if x.is_nan() { f64::NAN } else { 0.0 };
    }
    let mf = m as f64;
    if 0.25 * x * x <= mf + 1.0 {
        series(m, x)
    } else if x >= hankel_threshold(m) {
        hankel(m, x)
    } else {
        miller(m, x)
    }
}

pub(crate) fn hankel_threshold(m: u32) -> f64 {
    let mf = m as f64;
    (mf * mf).max(40.0)
}

/// Ascending series `sum (-1)^k (x/2)^{2k+m} / (k! (k+m)!)`.
pub(crate) fn series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + m as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
        if k > 500.0 {
            break;
        }
    }
    sum
}

/// Backward recurrence from an even starting order well past `max(m, x)`.
pub(crate) fn miller(m: u32, x: f64) -> f64 {
    let span = (m as f64).max(x);
    let mut start = (span + 12.0 * span.cbrt() + 12.0).ceil() as u32;
    if start % 2 == 1 {
        start += 1;
    }
    let two_over_x = 2.0 / x;
    // j_hi = J_{k+1}, j_cur = J_k (unnormalized)
    let mut j_hi = 0.0_f64;
    let mut j_cur = 1e-300_f64;
    let mut norm = 0.0_f64;
    let mut jm = 0.0_f64;
    let mut k = start;
    loop {
        if k == m {
            jm = j_cur;
        }
        if k % 2 == 0 {
            norm += if k == 0 { j_cur } else { 2.0 * j_cur };
        }
        if k == 0 {
            break;
        }
        let j_lo = (k as f64) * two_over_x * j_cur - j_hi;
        j_hi = j_cur;
        j_cur = j_lo;
        k -= 1;
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_hi *= 1e-250;
            norm *= 1e-250;
            jm *= 1e-250;
        }
    }
    jm / norm
}

/// Hankel expansion `sqrt(2/(pi x)) (P cos chi - Q sin chi)`, `chi = x - (2m+1) pi / 4`.
pub(crate) fn hankel(m: u32, x: f64) -> f64 {
    let mu = 4.0 * (m as f64) * (m as f64);
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * eight_x);
        let mag = term.abs();
        if mag > last {
            break;
        }
        last = mag;
        // term carries a_k / x^k; signs alternate every two orders
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if mag < 1e-17 {
            break;
        }
    }
    // reduce the phase exactly: (2m+1) pi/4 mod 2 pi
    let eighths = ((2 * m + 1) % 8) as f64;
    let (sp, cp) = (eighths * FRAC_PI_4).sin_cos();
    let (sx, cx) = x.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// `h_{m,n} = J_{|m|+1}(j_n^m)^2 / 2 = int_0^1 J_|m|(j_n^m r)^2 r dr`.
pub fn radial_normalizer(m: i32, n: usize) -> Result<f64> {
    let j = bessel_zero(m, n)?.value;
    Ok(normalizer_at(m, j))
}

pub(crate) fn normalizer_at(m: i32, zero: f64) -> f64 {
    let jp = bessel_j(m.unsigned_abs() as i32 + 1, zero);
    0.5 * jp * jp
}

/// The `n`-th positive zero of `J_|m|`.
pub fn bessel_zero(m: i32, n: usize) -> Result<BesselZero> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let zeros = bessel_zeros(m, n)?;
    Ok(BesselZero { order: m, index: n, value: zeros[n - 1] })
}

/// The first `count` positive zeros of `J_|m|`, shared from the cache.
pub fn bessel_zeros(m: i32, count: usize) -> Result<Arc<[f64]>> {
    let order = m.unsigned_abs();
    if order > MAX_ORDER {
        return Err(Error::OrderOutOfRange(m as i64));
    }
    if count > MAX_ZERO_INDEX {
        return Err(Error::ZeroIndexOutOfRange(count));
    }
    Ok(zero_cache().get(order, count))
}

/// McMahon's large-index expansion, used to seed Newton inside each bracket.
pub fn mcmahon_guess(m: i32, n: usize) -> f64 {
    let mu = 4.0 * (m as f64).powi(2);
    let beta = (n as f64 + 0.5 * m.unsigned_abs() as f64 - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

struct ZeroCache {
    orders: RwLock<HashMap<u32, Arc<[f64]>>>,
}

fn zero_cache() -> &'static ZeroCache {
    static CACHE: OnceLock<ZeroCache> = OnceLock::new();
    CACHE.get_or_init(|| ZeroCache { orders: RwLock::new(HashMap::new()) })
}

impl ZeroCache {
    fn get(&self, order: u32, count: usize) -> Arc<[f64]> {
        let known = {
            let map = self.orders.read().expect("zero cache poisoned");
            match map.get(&order) {
                Some(z) if z.len() >= count => return z.clone(),
                Some(z) => z.clone(),
                None => Arc::from(Vec::new()),
            }
        };
        // grow in powers of two so repeated small extensions stay cheap
        let target = count.max(2 * known.len()).clamp(count, MAX_ZERO_INDEX.max(count));
        let extended: Arc<[f64]> = Arc::from(extend_zeros(order, &known, target));
        let mut map = self.orders.write().expect("zero cache poisoned");
        let entry = map.entry(order).or_insert_with(|| extended.clone());
        if entry.len() < extended.len() {
            *entry = extended;
        }
        entry.clone()
    }
}

// Consecutive positive zeros of J_m (m >= 0) are more than 3.1 apart, so a
// scan step of 1 never holds two zeros: each sign change brackets exactly one.
const SCAN_STEP: f64 = 1.0;

fn extend_zeros(order: u32, known: &[f64], target: usize) -> Vec<f64> {
    let m = order as i32;
    let mut zeros = known.to_vec();
    zeros.reserve(target.saturating_sub(zeros.len()));
    // j_1^m > m, and J_m > 0 on (0, j_1^m)
    let mut a = match zeros.last() {
        Some(&z) => z + SCAN_STEP,
        None => order as f64,
    };
    let mut fa = bessel_j(m, a);
    while zeros.len() < target {
        let b = a + SCAN_STEP;
        let fb = bessel_j(m, b);
        if fb == 0.0 {
            zeros.push(b);
            a = b + SCAN_STEP;
            fa = bessel_j(m, a);
            continue;
        }
        if fa.signum() != fb.signum() {
            let guess = mcmahon_guess(m, zeros.len() + 1);
            zeros.push(refine_root(m, a, b, fa, guess));
        }
        a = b;
        fa = fb;
    }
    zeros
}

/// Safeguarded Newton on a sign-change bracket `[lo, hi]`.
fn refine_root(m: i32, mut lo: f64, mut hi: f64, f_lo: f64, guess: f64) -> f64 {
    let lo_sign = f_lo.signum();
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let fx = bessel_j(m, x);
        if fx == 0.0 {
            return x;
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let dfx = bessel_j_prime(m, x);
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs() || hi - lo <= 4.0 * f64::EPSILON * x.abs() {
            return next;
        }
        x = next;
    }
    x
}
