use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use bessel_fourier::report::{sig17, SCHEMA_VERSION};
use serde::Serialize;

use crate::config::{Format, RunConfig};

/// Every JSON report: the command, its configuration and the library result.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    report: &'a T,
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("writing into {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

fn csv_header(command: &str, cfg: &RunConfig) -> String {
    format!(
        "# schema={SCHEMA_VERSION} command={command} radial_order={} angular_count={} A={} output_dir={} format={}\n",
        cfg.radial_order,
        cfg.angular_count,
        sig17(cfg.a),
        cfg.output_dir.display(),
        cfg.format.extension()
    )
}

/// Writes `<stem>.<ext>` in the configured format; `csv` supplies the CSV body.
pub fn emit<T: Serialize>(
    cfg: &RunConfig,
    command: &str,
    stem: &str,
    report: &T,
    csv: impl FnOnce() -> String,
) -> anyhow::Result<PathBuf> {
    let path = cfg.output_dir.join(format!("{stem}.{}", cfg.format.extension()));
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Envelope { schema: SCHEMA_VERSION, command, config: cfg, report })?;
            s.push('\n');
            s
        }
        Format::Csv => csv_header(command, cfg) + &csv(),
    };
    write_atomic(&path, &text)?;
    println!("{}", path.display());
    Ok(path)
}

/// Two-column `x,y` plot data for one curve.
pub fn emit_curve(cfg: &RunConfig, command: &str, stem: &str, x: &str, y: &str, points: &[(f64, f64)]) -> anyhow::Result<PathBuf> {
    let path = cfg.output_dir.join(format!("{stem}.plot.csv"));
    let mut text = csv_header(command, cfg);
    text.push_str(&format!("{x},{y}\n"));
    for (a, b) in points {
        text.push_str(&format!("{},{}\n", sig17(*a), sig17(*b)));
    }
    write_atomic(&path, &text)?;
    println!("{}", path.display());
    Ok(path)
}

/// A file-name-safe rendering of a real parameter.
pub fn tag(x: f64) -> String {
    format!("{x}").replace('.', "_").replace('-', "m")
}
