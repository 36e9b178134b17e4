mod common;

use std::f64::consts::LN_2;
use std::sync::Arc;

use bessel_fourier::experiments::seeded_rng;
use bessel_fourier::norms::conjugate;
use bessel_fourier::weighted_ops::{
    ap_weight_check, ap_window_simplified, apply_memberwise, kernel_op_additive, kernel_op_reflected, maximal_function,
    weighted_vector_norm, uniform_bound_trend, CellMaximal, TrendConfig, WeightRule, WeightedFamily, WeightedOperator,
};
use bessel_fourier::Execution;
use common::simpson_pieces;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn kernels_on_constants_are_logarithms() {
    for x in [0.0f64, 0.1, 0.5, 0.9, 0.999] {
        let want = ((2.0 - x) / (1.0 - x)).ln();
        assert!((kernel_op_reflected(|_| 1.0, x).unwrap() - want).abs() <= 1e-9 * want);
    }
    for x in [1e-4f64, 0.01, 0.3, 1.0, 5.0] {
        let want = ((1.0 + x) / x).ln();
        assert!((kernel_op_additive(|_| 1.0, x).unwrap() - want).abs() <= 1e-9 * want);
    }
    assert!((kernel_op_reflected(|_| 1.0, 0.0).unwrap() - LN_2).abs() < 1e-12);
}

#[test]
fn kernels_match_simpson_oracle() {
    let x = 0.3;
    let want = simpson_pieces(&|t: f64| t / (x + t), 0.0, 1.0, 16, 1e-13);
    assert!((kernel_op_additive(|t| t, x).unwrap() - want).abs() < 1e-11);
    let x = 0.2;
    let want = simpson_pieces(&|t: f64| t * t / (2.0 - x - t), 0.0, 1.0, 16, 1e-13);
    assert!((kernel_op_reflected(|t| t * t, x).unwrap() - want).abs() < 1e-11);
    let x = 0.01;
    let f = |t: f64| (5.0 * t).cos() + t;
    let want = simpson_pieces(&|t: f64| f(t) / (x + t), 0.0, 1.0, 256, 1e-13);
    assert!((kernel_op_additive(f, x).unwrap() - want).abs() < 1e-9 * want.abs());
}

fn brute_force_maximal(averages: &[f64], cell: usize) -> f64 {
    let mut best = 0.0f64;
    for a in 0..=cell {
        for b in cell..averages.len() {
            let mean = averages[a..=b].iter().sum::<f64>() / (b - a + 1) as f64;
            best = best.max(mean);
        }
    }
    best
}

#[test]
fn cell_maximal_matches_brute_force() {
    let mut rng = seeded_rng(99);
    for _ in 0..20 {
        let n = rng.gen_range(1..40);
        let averages: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..3.0)).collect();
        let m = CellMaximal::from_cell_averages(&averages);
        for c in 0..n {
            let x = (c as f64 + rng.gen_range(0.05..0.95)) / n as f64;
            let want = brute_force_maximal(&averages, c);
            assert!((m.eval(x) - want).abs() <= 1e-14 * want.max(1.0));
            assert!(m.eval(x) >= averages[c] - 1e-13);
        }
    }
}

#[test]
fn maximal_of_indicator_decays_like_one_over_distance() {
    let m = CellMaximal::new(|t| if t < 0.25 { 1.0 } else { 0.0 }, 256).unwrap();
    // right of the support the best interval runs from 0 to the end of x's cell
    for x in [0.3f64, 0.503, 0.7519, 0.99] {
        let cell_end = ((x * 256.0).floor() + 1.0) / 256.0;
        assert!((m.eval(x) - 0.25 / cell_end).abs() < 1e-12, "x = {x}");
    }
    assert!((maximal_function(|t| if t < 0.25 { 1.0 } else { 0.0 }, 0.1) - 1.0).abs() < 1e-12);
}

#[test]
fn ap_paths_agree() {
    for k in 0..1000 {
        let p = 1.0 + 5.0 * k as f64 / 999.0;
        assert_eq!(ap_weight_check(p), ap_window_simplified(p), "p = {p}");
    }
    for p in [4.0 / 3.0, 4.0] {
        assert!(!ap_weight_check(p) && !ap_window_simplified(p));
    }
    for p in [4.0 / 3.0 + 1e-12, 4.0 - 1e-12, 2.0] {
        assert!(ap_weight_check(p) && ap_window_simplified(p));
    }
}

/// `[int_0^1 (sum_k |f_k|^q)^{p/q} r^{1 - p/2} dr]^{1/p}` for `p = 3`, using `r = s^2`.
fn simpson_weighted_norm_p3(fs: &[&dyn Fn(f64) -> f64], q: f64) -> f64 {
    let integrand = |s: f64| {
        let r = s * s;
        let sum: f64 = fs.iter().map(|f| f(r).abs().powf(q)).sum();
        2.0 * sum.powf(3.0 / q)
    };
    simpson_pieces(&integrand, 0.0, 1.0, 64, 1e-14).cbrt()
}

#[test]
fn vector_norm_matches_simpson_oracle() {
    let rule = Arc::new(WeightRule::new(3.0, 96).unwrap());
    let q = conjugate(3.0);
    let f1 = |r: f64| (3.0 * r).sin() + 0.4;
    let f2 = |r: f64| r * r - 0.5;
    let f3 = |r: f64| (-r).exp();
    let f4 = |r: f64| 0.3 * (7.0 * r).cos();
    let single = weighted_vector_norm(&WeightedFamily::sample(rule.clone(), q, &[f3]).unwrap()).finite().unwrap();
    assert!((single - simpson_weighted_norm_p3(&[&f3], q)).abs() <= 1e-9 * single);
    let fs: Vec<&(dyn Fn(f64) -> f64 + Sync)> = vec![&f1, &f2, &f3, &f4];
    let members: Vec<Vec<f64>> = fs.iter().map(|f| rule.nodes().iter().map(|&r| f(r)).collect()).collect();
    let got = weighted_vector_norm(&WeightedFamily::new(rule.clone(), q, members).unwrap()).finite().unwrap();
    let want = simpson_weighted_norm_p3(&[&f1, &f2, &f3, &f4], q);
    assert!((got - want).abs() <= 1e-5 * want, "{got} vs {want}");
    for k in [2usize, 7] {
        let copies = vec![f3; k];
        let norm = weighted_vector_norm(&WeightedFamily::sample(rule.clone(), q, &copies).unwrap()).finite().unwrap();
        assert!((norm - (k as f64).powf(1.0 / q) * single).abs() <= 1e-12 * norm);
    }
}

#[test]
fn weights_past_four_report_divergence() {
    let rule = Arc::new(WeightRule::new(5.0, 48).unwrap());
    assert!(weighted_vector_norm(&WeightedFamily::sample(rule.clone(), 1.25, &[|_: f64| 1.0]).unwrap()).is_divergent());
    let tame = weighted_vector_norm(&WeightedFamily::sample(rule, 1.25, &[|r: f64| r]).unwrap()).finite().unwrap();
    // int_0^1 r^5 r^{-3/2} dr = 2/9
    assert!((tame - (2.0f64 / 9.0).powf(0.2)).abs() < 1e-8);
}

#[test]
fn operators_preserve_positivity() {
    let rule = Arc::new(WeightRule::new(2.5, 32).unwrap());
    let fs = [|t: f64| 0.1 + t * t, |t: f64| (-(t - 0.4).powi(2) / 0.01).exp()];
    for op in WeightedOperator::ALL {
        let fam = apply_memberwise(op, &fs, rule.clone(), 2.0, Execution::default()).unwrap();
        assert!(fam.members().iter().flatten().all(|&v| v > 0.0), "{op:?}");
    }
}

#[test]
fn trend_is_deterministic_and_parallel_safe() {
    let cfg = TrendConfig { sizes: vec![1, 2, 4], families: 6, order: 32, ..TrendConfig::default() };
    let seq = uniform_bound_trend(WeightedOperator::Additive, 3.0, &TrendConfig { execution: Execution::Sequential, ..cfg.clone() })
        .unwrap();
    let par = uniform_bound_trend(WeightedOperator::Additive, 3.0, &TrendConfig { execution: Execution::Parallel, ..cfg.clone() })
        .unwrap();
    assert_eq!(seq, par);
    assert!(seq.caps.iter().all(|c| c.is_finite() && *c > 0.0));
    assert!(uniform_bound_trend(WeightedOperator::Maximal, 3.0, &TrendConfig { sizes: vec![4], ..cfg }).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn maximal_is_sublinear(a in prop::collection::vec(0.0f64..2.0, 1..24), seed in 0u64..1000) {
        let mut rng = seeded_rng(seed);
        let b: Vec<f64> = a.iter().map(|_| rng.gen_range(0.0..2.0)).collect();
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let (ma, mb, ms) = (CellMaximal::from_cell_averages(&a), CellMaximal::from_cell_averages(&b), CellMaximal::from_cell_averages(&sum));
        for c in 0..a.len() {
            let x = (c as f64 + 0.5) / a.len() as f64;
            prop_assert!(ms.eval(x) <= ma.eval(x) + mb.eval(x) + 1e-12);
        }
    }

    #[test]
    fn kernels_are_monotone(c in 0.0f64..1.0, d in 0.0f64..1.0, x in 0.01f64..0.99) {
        // f <= g pointwise gives T f <= T g for both positive kernels
        let f = move |t: f64| c * t;
        let g = move |t: f64| c * t + d;
        prop_assert!(kernel_op_additive(f, x).unwrap() <= kernel_op_additive(g, x).unwrap() + 1e-14);
        prop_assert!(kernel_op_reflected(f, x).unwrap() <= kernel_op_reflected(g, x).unwrap() + 1e-14);
    }
}
