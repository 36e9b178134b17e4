mod common;

use bessel_fourier::experiments::{
    coefficient_tail_study, convergence_study, convergence_table, delta_like, torus_partial_sum, torus_truncation,
    wing_counterexample, wing_lp_norm, Membership, NamedTestFunction, PaperEntry, Registry, Suite, TailSignature,
    TorusMode, Verdict,
};
use bessel_fourier::function::{DiskFunction, GridConfig, RadialProfile};
use bessel_fourier::transform::{truncation_pairs, TruncationPolicy, Window};
use bessel_fourier::{Error, Execution};
use common::read_table;

fn cfg() -> GridConfig {
    GridConfig { angular_count: Some(256), ..GridConfig::default() }
}

#[test]
fn eigen_sum_is_reproduced_once_window_covers_it() {
    let reg = Registry::builtin();
    let report = convergence_study(reg.lookup("eigen_sum").unwrap(), 2.0, &truncation_pairs(1.0, 8).unwrap(), &cfg()).unwrap();
    for row in &report.rows {
        if row.m >= 2 && row.n >= 3 {
            assert!(row.err_pq.as_f64() <= 1e-8 && row.err_lp.as_f64() <= 1e-8, "{row:?}");
        }
    }
    assert_eq!(report.verdict(), Verdict::Converging);
}

#[test]
fn mixed_error_dominates_lp_error_for_p_at_least_two() {
    let reg = Registry::builtin();
    let policy = truncation_pairs(1.0, 8).unwrap();
    for id in ["smooth_exp", "smooth_cos", "kink_band", "root_band"] {
        for p in [2.0, 2.5, 3.0, 3.9] {
            let report = convergence_study(reg.lookup(id).unwrap(), p, &policy, &cfg()).unwrap();
            for row in &report.rows {
                let (pq, lp) = (row.err_pq.as_f64(), row.err_lp.as_f64());
                assert!(lp <= pq + 1e-9, "{id} at p = {p}, window ({}, {}): {lp} > {pq}", row.n, row.m);
            }
        }
    }
}

#[test]
fn wing_is_flagged_divergent_outside_lp() {
    let reg = Registry::builtin();
    let report = convergence_study(reg.lookup("wing").unwrap(), 2.0, &truncation_pairs(1.0, 4).unwrap(), &cfg()).unwrap();
    assert_eq!(report.verdict(), Verdict::Diverging);
    assert!(report.rows.iter().all(|r| r.err_lp.is_divergent()));
    assert!(report.to_csv().lines().skip(1).all(|l| l.ends_with("divergent")));
    assert!(report.to_json().contains("\"divergent\""));
}

#[test]
fn policy_violations_are_rejected() {
    assert_eq!(
        TruncationPolicy::new(1.0, vec![Window { n: 2, m: 3 }]),
        Err(Error::PolicyViolation { n: 2, m: 3, a: 1.0 })
    );
    assert!(TruncationPolicy::new(1.0, vec![Window { n: 5, m: 2 }, Window { n: 6, m: 2 }]).is_err());
    assert!(TruncationPolicy::new(1.0, vec![]).is_err());
    assert!(TruncationPolicy::new(2.0, vec![Window { n: 5, m: 2 }, Window { n: 9, m: 4 }]).is_ok());
}

#[test]
fn unknown_function_ids_fail() {
    assert_eq!(Registry::builtin().lookup("nope").unwrap_err(), Error::UnknownFunction("nope".into()));
}

#[test]
fn wing_norms_match_reference() {
    let table = wing_counterexample(1.25, &[8, 32, 128], &GridConfig::default()).unwrap();
    let reference = read_table("wing_norms.csv");
    for (row, want) in table.rows.iter().zip(&reference) {
        assert_eq!(row.n, want[1] as usize);
        let (part, err) = (row.partial_norm.finite().unwrap(), row.error.finite().unwrap());
        assert!((part - want[2]).abs() <= 3e-5 * want[2], "N = {}: ||S_N f|| = {part}, want {}", row.n, want[2]);
        assert!((err - want[3]).abs() <= 3e-5 * want[3], "N = {}: error = {err}, want {}", row.n, want[3]);
    }
    let closed = wing_lp_norm(1.25).finite().unwrap();
    assert!((table.quadrature_norm.finite().unwrap() - closed).abs() <= 1e-6 * closed);
    assert!(!table.outside_lp);
    assert_ne!(table.verdict, Verdict::Converging);
}

#[test]
fn wing_outside_lp_reports_divergent_norms() {
    let table = wing_counterexample(1.5, &[4, 16], &GridConfig::default()).unwrap();
    assert!(table.outside_lp);
    assert!(table.closed_form_norm.is_divergent() && table.quadrature_norm.is_divergent());
    assert!(table.rows.iter().all(|r| r.error.is_divergent() && r.partial_norm.finite().is_some()));
    assert_eq!(table.verdict, Verdict::Diverging);
    assert!(wing_counterexample(1.5, &[0, 4], &GridConfig::default()).is_err());
}

#[test]
fn tail_sums_match_reference() {
    let reference = read_table("tail_sums.csv");
    for q in [1.0, 1.5, 2.0] {
        let study = coefficient_tail_study(q, 1_000_000).unwrap();
        let want: Vec<f64> = reference.iter().filter(|r| r[0] == q).map(|r| r[2]).collect();
        assert_eq!(study.partial_sums.len(), want.len());
        for (got, want) in study.partial_sums.iter().zip(&want) {
            assert!((got - want).abs() <= 1e-12 * want, "q = {q}: {got} vs {want}");
        }
    }
}

#[test]
fn tail_signatures() {
    assert_eq!(coefficient_tail_study(1.0, 1_000_000).unwrap().signature, TailSignature::Persistent);
    assert_eq!(coefficient_tail_study(1.5, 1_000_000).unwrap().signature, TailSignature::Persistent);
    assert_eq!(coefficient_tail_study(2.0, 1_000_000).unwrap().signature, TailSignature::Flat);
    assert_eq!(coefficient_tail_study(2.5, 1_000_000).unwrap().signature, TailSignature::Flat);
    assert!(coefficient_tail_study(0.0, 100).is_err());
}

#[test]
fn torus_truncations() {
    let f = delta_like(5);
    assert_eq!(torus_truncation(&f, 2, TorusMode::Cubic).len(), 25);
    assert_eq!(torus_truncation(&f, 2, TorusMode::Spherical).len(), 13);
    for n in 0..=5u64 {
        let sph = torus_truncation(&f, n, TorusMode::Spherical);
        let cub = torus_truncation(&f, n, TorusMode::Cubic);
        assert!(sph.keys().all(|k| cub.contains_key(k)));
        let s0 = torus_partial_sum(&cub, 0.0, 0.0);
        assert!((s0.re - ((2 * n + 1) * (2 * n + 1)) as f64).abs() < 1e-9 && s0.im.abs() < 1e-9);
    }
    // The cubic sum of the box is a product of one-dimensional Dirichlet kernels.
    let (x, y) = (0.137, 0.41);
    let dirichlet = |t: f64| (std::f64::consts::PI * 11.0 * t).sin() / (std::f64::consts::PI * t).sin();
    let got = torus_partial_sum(&f, x, y);
    assert!((got.re - dirichlet(x) * dirichlet(y)).abs() < 1e-10 && got.im.abs() < 1e-10);
}

#[test]
fn table_rows_follow_the_published_pattern() {
    let ps = [1.2, 2.0, 3.0, 3.9];
    let table = convergence_table(&Registry::builtin(), &truncation_pairs(1.0, 12).unwrap(), &ps, &cfg()).unwrap();
    assert_eq!(table.rows.len(), ps.len());
    for row in &table.rows {
        assert_eq!(PaperEntry::for_p(row.p).1, row.paper);
        assert_eq!(row.matches_paper, Some(true), "p = {}: {:?}", row.p, row.entries);
    }
    assert_eq!(table.to_csv().lines().count(), ps.len() + 1);
}

#[test]
fn reports_are_identical_across_execution_modes() {
    let reg = Registry::builtin();
    let policy = truncation_pairs(1.0, 6).unwrap();
    let ps = [1.2, 3.0];
    let seq = convergence_table(&reg, &policy, &ps, &cfg().with_execution(Execution::Sequential)).unwrap();
    let par = convergence_table(&reg, &policy, &ps, &cfg().with_execution(Execution::Parallel)).unwrap();
    assert_eq!(seq.to_json(), par.to_json());
    for (a, b) in seq.reports.iter().zip(&par.reports) {
        assert_eq!(a.to_json(), b.to_json());
    }
    let w1 = wing_counterexample(1.25, &[4, 8], &GridConfig::default().with_execution(Execution::Sequential)).unwrap();
    let w2 = wing_counterexample(1.25, &[4, 8], &GridConfig::default().with_execution(Execution::Parallel)).unwrap();
    assert_eq!(w1, w2);
}

#[test]
fn verdicts_are_stable_under_grid_refinement() {
    let reg = Registry::builtin();
    let policy = truncation_pairs(1.0, 10).unwrap();
    let coarse = GridConfig { angular_count: Some(128), ..GridConfig::default() };
    let fine = GridConfig { angular_count: Some(512), radial_order: coarse.radial_order * 2, ..coarse };
    for id in ["smooth_exp", "eigen_sum", "kink_band", "wing"] {
        for p in [1.2, 3.0] {
            let f = reg.lookup(id).unwrap();
            let a = convergence_study(f, p, &policy, &coarse).unwrap().verdict();
            let b = convergence_study(f, p, &policy, &fine).unwrap().verdict();
            assert_eq!(a, b, "{id} at p = {p}");
        }
    }
}

#[test]
fn custom_functions_can_be_registered() {
    let mut reg = Registry::empty();
    let f = DiskFunction::radial(RadialProfile::Smooth, |r| (1.0 - r * r).powi(3));
    reg.register(NamedTestFunction::new("cubic_bump", "(1 - r^2)^3", f, vec![Suite::Smooth], Membership::everywhere("polynomial")))
        .unwrap();
    let report = convergence_study(reg.lookup("cubic_bump").unwrap(), 3.0, &truncation_pairs(1.0, 10).unwrap(), &cfg()).unwrap();
    assert_eq!(report.verdict(), Verdict::Converging);
    assert_eq!(reg.suite(Suite::Smooth).count(), 1);
}
