mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bessel_fourier::bessel::bessel_zeros;
use bessel_fourier::experiments::{
    convergence_study, convergence_table, delta_like, torus_partial_sum, torus_truncation, wing_counterexample, Registry,
    TorusMode,
};
use bessel_fourier::function::DiskGrid;
use bessel_fourier::norms::{lp_disk_norm, mixed_norm_p2, mixed_norm_pq, Exponents, NormValue};
use bessel_fourier::quadrature::AngularGrid;
use bessel_fourier::report::{ser_sig17, ser_vec_sig17, sig17};
use bessel_fourier::transform::{analyze, truncation_pairs};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use config::{Format, Overrides, RunConfig, UsageError};
use output::{emit, emit_curve, tag};

#[derive(Parser)]
#[command(name = "bfs", version, about = "Bessel-Fourier series on the unit disk")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Directory for report files [env: BFS_OUTPUT_DIR, default: .]
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// File of key=value lines (radial_order, angular_count, A, output_dir, format); flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Minimum radial quadrature order (>= 8)
    #[arg(long, global = true)]
    radial_order: Option<usize>,
    /// Angular sample count (>= 2 M + 1)
    #[arg(long, global = true)]
    angular_count: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MixedKind {
    P2,
    Pq,
}

#[derive(Clone, Copy, ValueEnum)]
enum TorusChoice {
    Spherical,
    Cubic,
}

#[derive(Subcommand)]
enum Command {
    /// Positive zeros of J_m
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long)]
        count: usize,
    },
    /// Expansion coefficients of a registered function
    Expand {
        #[arg(long)]
        function: String,
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "N")]
        n: usize,
    },
    /// L^p(D) norm, or a mixed norm with --mixed
    Norm {
        #[arg(long)]
        function: String,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum)]
        mixed: Option<MixedKind>,
    },
    /// Convergence study over the admissible windows N = ceil(A M + 1)
    Converge {
        #[arg(long)]
        function: String,
        #[arg(long)]
        p: f64,
        #[arg(long = "A")]
        a: Option<f64>,
        #[arg(long = "Mmax")]
        m_max: usize,
    },
    /// Radial partial sums of r^(-3/2)
    Wing {
        #[arg(long)]
        p: f64,
        #[arg(long = "Ns", value_delimiter = ',', required = true)]
        ns: Vec<usize>,
    },
    /// Spherical or cubic truncation of the bundled delta-like coefficients on the torus
    Torus {
        #[arg(long, value_enum)]
        mode: TorusChoice,
        #[arg(long = "N")]
        n: u64,
        /// Half-width of the bundled coefficient box
        #[arg(long, default_value_t = 8)]
        radius: u64,
    },
    /// Convergence table over all registered functions
    Table {
        #[arg(long, value_delimiter = ',', required = true)]
        ps: Vec<f64>,
        #[arg(long = "Mmax", default_value_t = 16)]
        m_max: usize,
    },
}

#[derive(Serialize)]
struct ZerosReport {
    m: i32,
    #[serde(serialize_with = "ser_vec_sig17")]
    zeros: Vec<f64>,
}

#[derive(Serialize)]
struct Coefficient {
    m: i32,
    n: usize,
    #[serde(serialize_with = "ser_sig17")]
    re: f64,
    #[serde(serialize_with = "ser_sig17")]
    im: f64,
}

#[derive(Serialize)]
struct ExpandReport {
    function_id: String,
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    coefficients: Vec<Coefficient>,
}

#[derive(Serialize)]
struct NormReport {
    function_id: String,
    kind: &'static str,
    #[serde(serialize_with = "ser_sig17")]
    p: f64,
    #[serde(serialize_with = "ser_sig17")]
    q: f64,
    value: NormValue,
}

#[derive(Serialize)]
struct TorusReport {
    mode: TorusMode,
    #[serde(rename = "N")]
    n: u64,
    source_radius: u64,
    retained: usize,
    modes: Vec<(i64, i64)>,
    #[serde(serialize_with = "ser_sig17")]
    value_at_origin: f64,
}

fn norm_cell(v: NormValue) -> String {
    v.finite().map_or_else(|| "divergent".to_string(), sig17)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let g = cli.global;
    let a_flag = match &cli.command {
        Command::Converge { a, .. } => *a,
        _ => None,
    };
    let flags = Overrides {
        radial_order: g.radial_order,
        angular_count: g.angular_count,
        a: a_flag,
        output_dir: g.out_dir,
        format: g.format,
    };
    let cfg = RunConfig::resolve(g.config.as_deref(), &flags)?;
    let registry = Registry::builtin();
    match cli.command {
        Command::Zeros { m, count } => {
            let zeros = bessel_zeros(m, count)?.to_vec();
            let report = ZerosReport { m, zeros };
            let points: Vec<(f64, f64)> = report.zeros.iter().enumerate().map(|(i, z)| ((i + 1) as f64, *z)).collect();
            emit(&cfg, "zeros", &format!("zeros_m{m}"), &report, || {
                let mut s = String::from("n,zero\n");
                for (i, z) in report.zeros.iter().enumerate() {
                    s.push_str(&format!("{},{}\n", i + 1, sig17(*z)));
                }
                s
            })?;
            emit_curve(&cfg, "zeros", &format!("zeros_m{m}"), "n", "zero", &points)?;
        }
        Command::Expand { function, m, n } => {
            cfg.check_angular(m)?;
            let f = registry.lookup(&function)?;
            let coeffs = analyze(f.function(), m, n, &cfg.grid())?;
            let report = ExpandReport {
                function_id: function.clone(),
                m,
                n,
                coefficients: coeffs.iter().map(|(m, n, v)| Coefficient { m, n, re: v.re, im: v.im }).collect(),
            };
            emit(&cfg, "expand", &format!("expand_{function}_M{m}_N{n}"), &report, || {
                let mut s = String::from("m,n,re,im\n");
                for c in &report.coefficients {
                    s.push_str(&format!("{},{},{},{}\n", c.m, c.n, sig17(c.re), sig17(c.im)));
                }
                s
            })?;
        }
        Command::Norm { function, p, mixed } => {
            let exps = Exponents::new(p)?;
            let f = registry.lookup(&function)?;
            // a radial rule at the base order; every angular mode the grid resolves enters the mixed norms
            let radial = cfg.grid().radial_for(f.function().profile(), 0.0)?;
            let grid = DiskGrid::new(radial, AngularGrid::new(cfg.angular_count)?);
            let cap = cfg.angular_count;
            let (kind, q, value) = match mixed {
                None => ("lp", p, lp_disk_norm(f.function(), p, &grid)?),
                Some(MixedKind::P2) => ("p2", 2.0, mixed_norm_p2(f.function(), p, cap, &grid)?),
                Some(MixedKind::Pq) => ("pq", exps.q(), mixed_norm_pq(f.function(), exps, cap, &grid)?),
            };
            let report = NormReport { function_id: function.clone(), kind, p, q, value };
            emit(&cfg, "norm", &format!("norm_{kind}_{function}_p{}", tag(p)), &report, || {
                format!("function,kind,p,q,value\n{function},{kind},{},{},{}\n", sig17(p), sig17(q), norm_cell(value))
            })?;
        }
        Command::Converge { function, p, m_max, .. } => {
            cfg.check_angular(m_max)?;
            let policy = truncation_pairs(cfg.a, m_max)?;
            let report = convergence_study(registry.lookup(&function)?, p, &policy, &cfg.grid())?;
            let stem = format!("converge_{function}_p{}_A{}_M{m_max}", tag(p), tag(cfg.a));
            emit(&cfg, "converge", &stem, &report, || report.to_csv())?;
            let curve: Vec<(f64, f64)> = report.rows.iter().map(|r| (r.m as f64, r.err_pq.as_f64())).collect();
            emit_curve(&cfg, "converge", &format!("{stem}.err_pq"), "M", "err_pq", &curve)?;
            let curve: Vec<(f64, f64)> = report.rows.iter().map(|r| (r.m as f64, r.err_lp.as_f64())).collect();
            emit_curve(&cfg, "converge", &format!("{stem}.err_lp"), "M", "err_lp", &curve)?;
        }
        Command::Wing { p, ns } => {
            let table = wing_counterexample(p, &ns, &cfg.grid())?;
            let stem = format!("wing_p{}", tag(p));
            emit(&cfg, "wing", &stem, &table, || table.to_csv())?;
            let curve: Vec<(f64, f64)> = table.rows.iter().map(|r| (r.n as f64, r.error.as_f64())).collect();
            emit_curve(&cfg, "wing", &format!("{stem}.error"), "N", "error", &curve)?;
        }
        Command::Torus { mode, n, radius } => {
            let (mode, name) = match mode {
                TorusChoice::Spherical => (TorusMode::Spherical, "spherical"),
                TorusChoice::Cubic => (TorusMode::Cubic, "cubic"),
            };
            let kept = torus_truncation(&delta_like(radius), n, mode);
            let report = TorusReport {
                mode,
                n,
                source_radius: radius,
                retained: kept.len(),
                modes: kept.keys().copied().collect(),
                value_at_origin: torus_partial_sum(&kept, 0.0, 0.0).re,
            };
            emit(&cfg, "torus", &format!("torus_{name}_N{n}"), &report, || {
                let mut s = String::from("k1,k2,re,im\n");
                for ((a, b), v) in &kept {
                    s.push_str(&format!("{a},{b},{},{}\n", sig17(v.re), sig17(v.im)));
                }
                s
            })?;
        }
        Command::Table { ps, m_max } => {
            cfg.check_angular(m_max)?;
            let policy = truncation_pairs(cfg.a, m_max)?;
            let table = convergence_table(&registry, &policy, &ps, &cfg.grid())?;
            emit(&cfg, "table", "table", &table, || table.to_csv())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli).context("bfs failed") {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let root = e.root_cause();
            eprintln!("error: {root}");
            if root.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
