//! CSV output. Floats use the shortest decimal that round-trips (exponent
//! form outside [1e-4, 1e16)), so equal values always print identically.

use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

pub fn row(values: &[f64]) -> String {
    let mut line = values.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Writes `header` and `rows` to `path` in one pass.
pub fn write_csv(path: &Path, header: &[String], rows: &[Vec<f64>]) -> Result<()> {
    let mut text = header.join(",");
    text.push('\n');
    for r in rows {
        text.push_str(&row(r));
    }
    let mut file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    file.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))
}
