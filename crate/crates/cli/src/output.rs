use std::io::Write;
use std::path::Path;

use crate::CliError;

/// 17 significant digits; parses back to the identical double.
pub fn machine(x: f64) -> String {
    format!("{x:.16e}")
}

/// 6 significant digits for people.
pub fn human(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("formatted float");
    if rounded.abs() >= 1e-4 && rounded.abs() < 1e6 {
        format!("{rounded}")
    } else {
        format!("{x:.5e}")
    }
}

pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

/// Writes to `path` through a temporary file in the same directory, so a
/// failed run never leaves a partial file behind. `None` means stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
