use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use bessel_fourier::function::GridConfig;
use clap::ValueEnum;
use serde::Serialize;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "BFS_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// A malformed command line or config file; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub radial_order: usize,
    pub angular_count: usize,
    #[serde(rename = "A")]
    pub a: f64,
    pub output_dir: PathBuf,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { radial_order: 64, angular_count: 256, a: 1.0, output_dir: PathBuf::from("."), format: Format::Json }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub radial_order: Option<usize>,
    pub angular_count: Option<usize>,
    pub a: Option<f64>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, UsageError> {
    value.parse().map_err(|_| UsageError(format!("config key `{key}` has invalid value `{value}`")))
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| UsageError(format!("config line {}: expected key=value, got `{line}`", i + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

impl RunConfig {
    /// Defaults, then the environment, then the config file, then flags.
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> anyhow::Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV).filter(|d| !d.is_empty()) {
            cfg.output_dir = PathBuf::from(dir);
        }
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read config file {}: {e}", path.display())))?;
            for (k, v) in parse_config_file(&text)? {
                match k.as_str() {
                    "radial_order" => cfg.radial_order = parse_value(&k, &v)?,
                    "angular_count" => cfg.angular_count = parse_value(&k, &v)?,
                    "A" => cfg.a = parse_value(&k, &v)?,
                    "output_dir" => cfg.output_dir = PathBuf::from(v),
                    "format" => {
                        cfg.format = Format::from_str(&v, true)
                            .map_err(|_| UsageError(format!("config key `format` must be json or csv, got `{v}`")))?
                    }
                    _ => return Err(UsageError(format!("unknown config key `{k}`")).into()),
                }
            }
        }
        if let Some(v) = flags.radial_order {
            cfg.radial_order = v;
        }
        if let Some(v) = flags.angular_count {
            cfg.angular_count = v;
        }
        if let Some(v) = flags.a {
            cfg.a = v;
        }
        if let Some(v) = &flags.output_dir {
            cfg.output_dir = v.clone();
        }
        if let Some(v) = flags.format {
            cfg.format = v;
        }
        if cfg.angular_count == 0 {
            anyhow::bail!("angular_count must be positive");
        }
        if cfg.radial_order < 8 {
            anyhow::bail!("radial_order must be at least 8, got {}", cfg.radial_order);
        }
        Ok(cfg)
    }

    /// Checks `angular_count >= 2 M + 1` for the largest requested `M`.
    pub fn check_angular(&self, m_max: usize) -> anyhow::Result<()> {
        bessel_fourier::quadrature::AngularGrid::alias_free(self.angular_count, m_max)?;
        Ok(())
    }

    pub fn grid(&self) -> GridConfig {
        GridConfig { radial_order: self.radial_order, angular_count: Some(self.angular_count), ..GridConfig::default() }
    }
}
