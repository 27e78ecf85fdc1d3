//! Density file ingestion and deterministic CSV output.
//!
//! Grid files are CSV with header `x,p`: uniformly spaced node coordinates
//! (tolerance 1e-9 relative to the span) and density values. Sample files
//! are CSV with header `sample`, one value per row. Output is RFC-4180-style
//! CSV with a header row, LF line endings, and 17 significant digits, so
//! identical inputs reproduce byte-identical files.

use std::io::Write;
use std::path::Path;

use transport_hessian::GridDensity64;

use crate::config::InputFormat;
use crate::error::{CliError, Result};

/// Relative tolerance on grid uniformity, measured against the span.
const GRID_TOL: f64 = 1e-9;

/// Loads a density from `path` according to the declared format; densities
/// read from samples are rebuilt on `grid` intervals.
pub fn load_input(path: &Path, format: InputFormat, grid: usize) -> Result<GridDensity64> {
    let bytes = std::fs::read(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            CliError::FileNotFound(path.to_path_buf())
        } else {
            CliError::Io(format!("{}: {e}", path.display()))
        }
    })?;
    let parse = |message: String| CliError::Parse {
        path: path.to_path_buf(),
        message,
    };

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes.as_slice());
    let headers = reader.headers().map_err(|e| parse(e.to_string()))?.clone();

    match format {
        InputFormat::Grid => {
            if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "p" {
                return Err(parse(format!(
                    "grid files need the header `x,p`, got {headers:?}"
                )));
            }
            let mut xs = Vec::new();
            let mut ps = Vec::new();
            for (i, record) in reader.records().enumerate() {
                let record = record.map_err(|e| parse(e.to_string()))?;
                if record.len() != 2 {
                    return Err(parse(format!("row {}: expected 2 fields", i + 2)));
                }
                let x: f64 = record[0]
                    .parse()
                    .map_err(|_| parse(format!("row {}: bad x value {:?}", i + 2, &record[0])))?;
                let p: f64 = record[1]
                    .parse()
                    .map_err(|_| parse(format!("row {}: bad p value {:?}", i + 2, &record[1])))?;
                xs.push(x);
                ps.push(p);
            }
            if xs.len() < 2 {
                return Err(parse("grid files need at least 2 rows".to_string()));
            }
            check_uniform(&xs).map_err(parse)?;
            let lo = xs[0];
            let hi = *xs.last().unwrap();
            Ok(GridDensity64::new(ps, lo, hi)?)
        }
        InputFormat::Samples => {
            if headers.len() != 1 || &headers[0] != "sample" {
                return Err(parse(format!(
                    "sample files need the header `sample`, got {headers:?}"
                )));
            }
            let mut samples = Vec::new();
            for (i, record) in reader.records().enumerate() {
                let record = record.map_err(|e| parse(e.to_string()))?;
                let s: f64 = record[0]
                    .parse()
                    .map_err(|_| parse(format!("row {}: bad sample {:?}", i + 2, &record[0])))?;
                samples.push(s);
            }
            let raw = GridDensity64::from_samples(&samples, None)?;
            Ok(raw.resample(grid)?)
        }
    }
}

fn check_uniform(xs: &[f64]) -> std::result::Result<(), String> {
    let n = xs.len() - 1;
    let span = xs[n] - xs[0];
    if !(span.is_finite() && span > 0.0) {
        return Err("x column must be increasing".to_string());
    }
    let dx = span / n as f64;
    for i in 0..n {
        let step = xs[i + 1] - xs[i];
        if step <= 0.0 {
            return Err(format!("x column not increasing at row {}", i + 2));
        }
        if (step - dx).abs() > GRID_TOL * span {
            return Err(format!(
                "non-uniform grid at row {}: step {step:e} vs mean {dx:e}",
                i + 2
            ));
        }
    }
    Ok(())
}

/// Full-precision float formatting: 17 significant digits, round-trip exact.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Quotes a CSV field when it needs it (RFC 4180).
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes header + rows as CSV with LF line endings; `None` targets stdout.
pub fn write_output(header: &[&str], rows: &[Vec<String>], out: Option<&Path>) -> Result<()> {
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        text.push_str(&fields.join(","));
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
