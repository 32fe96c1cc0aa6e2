use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use lfadjoint::VerificationReport;

use crate::args::Format;

pub const OUT_DIR_VAR: &str = "LFADJOINT_OUT_DIR";

/// `--out` wins; relative paths and the default file name are placed in
/// `$LFADJOINT_OUT_DIR` when it is set. `None` means stdout.
pub fn resolve(out: Option<&Path>, default_name: &str) -> Option<PathBuf> {
    let dir = env::var_os(OUT_DIR_VAR).filter(|d| !d.is_empty()).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(default_name)),
        (None, None) => None,
    }
}

pub fn emit(bytes: &[u8], target: Option<PathBuf>) -> io::Result<()> {
    match target {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, bytes)
        }
        None => io::stdout().lock().write_all(bytes),
    }
}

pub fn json<T: serde::Serialize + ?Sized>(value: &T) -> io::Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Shortest round-trip form that always shows a decimal point or exponent.
pub fn float(x: f64) -> String {
    format!("{x:?}")
}

pub fn csv_rows<I, R>(header: &[&str], rows: I) -> io::Result<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

/// One row per field: `section,key,value`.
pub fn report_csv(report: &VerificationReport) -> io::Result<Vec<u8>> {
    let mut rows: Vec<[String; 3]> = vec![["check".into(), String::new(), report.check.clone()]];
    rows.extend(
        report
            .params
            .iter()
            .map(|(k, v)| ["param".into(), k.clone(), v.to_string()]),
    );
    rows.extend(
        report
            .residuals
            .iter()
            .map(|(k, v)| ["residual".into(), k.clone(), float(*v)]),
    );
    for (section, values) in [("singular_value", &report.singular_values), ("decay", &report.decay)] {
        if let Some(values) = values {
            rows.extend(
                values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| [section.into(), i.to_string(), float(*v)]),
            );
        }
    }
    rows.push(["truncation".into(), "M".into(), report.truncations[0].to_string()]);
    rows.push(["truncation".into(), "2M".into(), report.truncations[1].to_string()]);
    rows.push(["pass".into(), String::new(), report.pass.to_string()]);
    csv_rows(&["section", "key", "value"], rows)
}

pub fn report_bytes(report: &VerificationReport, format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Json => json(report),
        Format::Csv => report_csv(report),
    }
}
