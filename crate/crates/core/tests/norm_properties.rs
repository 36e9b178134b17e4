mod common;

use std::f64::consts::PI;

use bessel_fourier::experiments::{random_band_limited, seeded_rng, wing_lp_norm};
use bessel_fourier::function::{DiskFunction, DiskGrid, GridConfig, RadialProfile};
use bessel_fourier::norms::{
    conjugate, lp_disk_norm, mixed_norm_of_samples, mixed_norm_p2, mixed_norm_pq, rhy_gap, Exponents, NormValue,
};
use common::simpson_pieces;
use num_complex::Complex64;
use proptest::prelude::*;

fn grid(m: usize, n: usize) -> DiskGrid {
    GridConfig { angular_count: Some(128), ..GridConfig::default() }.grid_for(RadialProfile::Smooth, m, n).unwrap()
}

fn value(v: NormValue) -> f64 {
    v.finite().expect("finite norm")
}

#[test]
fn disk_norm_matches_simpson_oracle() {
    // Positive and smooth in (r, t), so |f|^p is smooth and the periodic
    // trapezoid rule in t is spectrally accurate.
    let g = |r: f64, t: f64| 2.0 + r * (2.0 * PI * t).cos() + r * r * (4.0 * PI * t).sin();
    let f = DiskFunction::from_fn(RadialProfile::Smooth, move |r, t| Complex64::new(g(r, t), 0.0));
    for p in [1.0, 1.5, 3.0, 5.5] {
        let inner = |r: f64| (0..400).map(|j| g(r, j as f64 / 400.0).powf(p)).sum::<f64>() / 400.0 * r;
        let want = simpson_pieces(&inner, 0.0, 1.0, 8, 1e-13).powf(1.0 / p);
        let got = value(lp_disk_norm(&f, p, &grid(2, 4)).unwrap());
        assert!((got - want).abs() <= 1e-10 * want, "p = {p}: {got} vs {want}");
    }
}

#[test]
fn mixed_norms_match_simpson_oracle() {
    // f_0 = 1 - r^2, f_1 = r / 2, f_{-3} = r^3 (1 - r)^2
    // Non-integer powers of r near the origin limit the radial rule to about 1e-10.
    let f = DiskFunction::from_fn(RadialProfile::Smooth, |r, t| {
        Complex64::new(1.0 - r * r, 0.0)
            + Complex64::from_polar(0.5 * r, 2.0 * PI * t)
            + Complex64::from_polar(r.powi(3) * (1.0 - r).powi(2), -6.0 * PI * t)
    });
    for p in [1.5, 2.0, 3.0, 3.9] {
        for q in [1.0, 2.0, conjugate(p), 7.0] {
            let integrand = |r: f64| {
                let s = (1.0 - r * r).powf(q) + (0.5 * r).powf(q) + (r.powi(3) * (1.0 - r).powi(2)).powf(q);
                s.powf(p / q) * r
            };
            let want = simpson_pieces(&integrand, 0.0, 1.0, 8, 1e-13).powf(1.0 / p);
            let samples = f.sample(&grid(3, 4)).unwrap();
            let got = value(mixed_norm_of_samples(&samples, &grid(3, 4), p, q, 8).unwrap());
            assert!((got - want).abs() <= 1e-9 * want, "p = {p}, q = {q}: {got} vs {want}");
        }
    }
    let p2 = value(mixed_norm_p2(&f, 3.0, 8, &grid(3, 4)).unwrap());
    let direct = value(mixed_norm_of_samples(&f.sample(&grid(3, 4)).unwrap(), &grid(3, 4), 3.0, 2.0, 8).unwrap());
    assert_eq!(p2, direct);
}

#[test]
fn mode_cap_truncates_the_mixed_norm() {
    let f = DiskFunction::from_fn(RadialProfile::Smooth, |r, t| Complex64::new(1.0 - r, 0.0) + Complex64::from_polar(r, 6.0 * PI * t));
    let exps = Exponents::new(3.0).unwrap();
    let full = value(mixed_norm_pq(&f, exps, 3, &grid(3, 4)).unwrap());
    let capped = value(mixed_norm_pq(&f, exps, 2, &grid(3, 4)).unwrap());
    let radial_only = simpson_pieces(&|r: f64| (1.0 - r).powi(3) * r, 0.0, 1.0, 4, 1e-14).cbrt();
    assert!((capped - radial_only).abs() < 1e-12);
    assert!(full > capped);
}

#[test]
fn disk_norm_never_exceeds_mixed_norm_for_p_at_least_two() {
    let mut rng = seeded_rng(2024);
    for k in 0..100 {
        let (c, f) = random_band_limited(&mut rng, 5, 5).unwrap();
        let g = grid(c.m_max(), c.n_max());
        for p in [2.0, 2.5, 3.0, 3.9] {
            let (lp, pq) = rhy_gap(&f, Exponents::new(p).unwrap(), &g).unwrap();
            let (lp, pq) = (value(lp), value(pq));
            assert!(lp <= pq * (1.0 + 1e-12), "sample {k}, p = {p}: {lp} > {pq}");
            if p == 2.0 {
                assert!((lp - pq).abs() <= 1e-10 * pq);
            }
        }
    }
    assert!(rhy_gap(&DiskFunction::radial(RadialProfile::Smooth, |r| r), Exponents::new(1.5).unwrap(), &grid(1, 2)).is_err());
}

#[test]
fn wing_norm_is_finite_only_below_four_thirds() {
    let wing = DiskFunction::radial(RadialProfile::SingularAtZero, |r| r.powf(-1.5));
    let g = GridConfig::default().grid_for(RadialProfile::SingularAtZero, 0, 8).unwrap();
    for p in [1.0, 1.1, 1.2, 1.3] {
        let got = value(lp_disk_norm(&wing, p, &g).unwrap());
        let want = wing_lp_norm(p).finite().unwrap();
        assert!((got - want).abs() <= 1e-6 * want, "p = {p}: {got} vs {want}");
    }
    for p in [4.0 / 3.0, 1.5, 2.0, 3.0] {
        assert!(lp_disk_norm(&wing, p, &g).unwrap().is_divergent(), "p = {p}");
        assert!(mixed_norm_pq(&wing, Exponents::new(p).unwrap(), 4, &g).unwrap().is_divergent());
    }
}

#[test]
fn invalid_exponents_are_rejected() {
    let f = DiskFunction::radial(RadialProfile::Smooth, |r| r);
    assert!(Exponents::new(0.5).is_err());
    assert!(Exponents::new(f64::NAN).is_err());
    assert!(lp_disk_norm(&f, 0.9, &grid(0, 2)).is_err());
    assert!(mixed_norm_of_samples(&f.sample(&grid(0, 2)).unwrap(), &grid(0, 2), 2.0, 0.5, 2).is_err());
    assert_eq!(Exponents::new(1.0).unwrap().q(), f64::INFINITY);
    assert_eq!(Exponents::new(4.0).unwrap().q(), 4.0 / 3.0);
}

fn sample_function(a: f64, b: f64, c: f64) -> DiskFunction {
    DiskFunction::from_fn(RadialProfile::Smooth, move |r, t| {
        Complex64::new(a * (1.0 - r * r), c * r) + Complex64::from_polar(b * r * r, 4.0 * PI * t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn norms_are_homogeneous(a in -1.0f64..1.0, b in -1.0f64..1.0, s in -3.0f64..3.0, p in 1.0f64..6.0) {
        let f = sample_function(a, b, 0.3);
        let g = grid(2, 3);
        let exps = Exponents::new(p).unwrap();
        let fs = f.scaled(Complex64::new(s, 0.0));
        let (n1, n2) = (value(lp_disk_norm(&f, p, &g).unwrap()), value(lp_disk_norm(&fs, p, &g).unwrap()));
        prop_assert!((n2 - s.abs() * n1).abs() <= 1e-12 * (1.0 + n2));
        let (m1, m2) = (value(mixed_norm_pq(&f, exps, 4, &g).unwrap()), value(mixed_norm_pq(&fs, exps, 4, &g).unwrap()));
        prop_assert!((m2 - s.abs() * m1).abs() <= 1e-12 * (1.0 + m2));
    }

    #[test]
    fn triangle_inequality(a in -1.0f64..1.0, b in -1.0f64..1.0, c in -1.0f64..1.0, d in -1.0f64..1.0, p in 1.0f64..6.0) {
        let (f, h) = (sample_function(a, b, 0.2), sample_function(c, d, -0.7));
        let sum = DiskFunction::combination(vec![(Complex64::new(1.0, 0.0), f.clone()), (Complex64::new(1.0, 0.0), h.clone())]);
        let g = grid(2, 3);
        let n = |x: &DiskFunction| value(lp_disk_norm(x, p, &g).unwrap());
        prop_assert!(n(&sum) <= n(&f) + n(&h) + 1e-12);
        let exps = Exponents::new(p).unwrap();
        let m = |x: &DiskFunction| value(mixed_norm_pq(x, exps, 4, &g).unwrap());
        prop_assert!(m(&sum) <= m(&f) + m(&h) + 1e-12);
    }

    #[test]
    fn mixed_norm_decreases_in_q(a in -1.0f64..1.0, b in -1.0f64..1.0, p in 1.0f64..6.0, q1 in 1.0f64..4.0, dq in 0.0f64..4.0) {
        let f = sample_function(a, b, 0.5);
        let g = grid(2, 3);
        let samples = f.sample(&g).unwrap();
        let lo = value(mixed_norm_of_samples(&samples, &g, p, q1, 4).unwrap());
        let hi = value(mixed_norm_of_samples(&samples, &g, p, q1 + dq, 4).unwrap());
        let sup = value(mixed_norm_of_samples(&samples, &g, p, f64::INFINITY, 4).unwrap());
        prop_assert!(hi <= lo * (1.0 + 1e-12));
        prop_assert!(sup <= hi * (1.0 + 1e-12));
    }
}
