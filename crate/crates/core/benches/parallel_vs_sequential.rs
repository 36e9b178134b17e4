use bessel_fourier::experiments::{convergence_study, Registry};
use bessel_fourier::function::GridConfig;
use bessel_fourier::transform::{analyze, truncation_pairs};
use bessel_fourier::weighted_ops::{uniform_bound_trend, TrendConfig, WeightedOperator};
use bessel_fourier::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn transforms(c: &mut Criterion) {
    let reg = Registry::builtin();
    let f = reg.lookup("smooth_exp").unwrap().function().clone();
    let mut group = c.benchmark_group("analyze_M16_N17");
    for (name, exec) in MODES {
        let cfg = GridConfig { angular_count: Some(256), ..GridConfig::default() }.with_execution(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| analyze(&f, 16, 17, &cfg).unwrap()));
    }
    group.finish();
}

fn studies(c: &mut Criterion) {
    let reg = Registry::builtin();
    let f = reg.lookup("kink_band").unwrap();
    let policy = truncation_pairs(1.0, 12).unwrap();
    let mut group = c.benchmark_group("convergence_study_p3");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = GridConfig { angular_count: Some(256), ..GridConfig::default() }.with_execution(exec);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| convergence_study(f, 3.0, &policy, &cfg).unwrap())
        });
    }
    group.finish();
}

fn trends(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximal_trend_p3");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = TrendConfig { sizes: vec![1, 4, 16], families: 10, execution: exec, ..TrendConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| uniform_bound_trend(WeightedOperator::Maximal, 3.0, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, transforms, studies, trends);
criterion_main!(benches);
