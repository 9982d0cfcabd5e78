//! CSV output helpers.
//!
//! Files are RFC-4180: comma-separated, CRLF line endings, UTF-8. None
//! of the emitted values contain commas, quotes or newlines, so no field
//! ever needs quoting. Measured values carry 17 significant digits
//! (enough to round-trip an f64 exactly); key columns such as frequency
//! labels use the shortest exact decimal form so they stay usable as
//! grouping keys.

use anyhow::{Context, Result};
use std::fs;
use std::path::Path;

/// A measured value: 17 significant digits in scientific notation.
pub fn fmt_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// A key or label number: shortest decimal that round-trips the f64.
pub fn fmt_key(x: f64) -> String {
    format!("{x}")
}

/// A frequency vector label: components semicolon-joined, shortest form.
pub fn fmt_omega(frequency: &[f64]) -> String {
    frequency
        .iter()
        .map(|&f| fmt_key(f))
        .collect::<Vec<_>>()
        .join(";")
}

/// Assemble a CSV body from a header line and pre-joined rows.
pub fn csv_body(header: &str, rows: &[String]) -> String {
    let mut body = String::with_capacity(header.len() + 2 + rows.iter().map(|r| r.len() + 2).sum::<usize>());
    body.push_str(header);
    body.push_str("\r\n");
    for row in rows {
        body.push_str(row);
        body.push_str("\r\n");
    }
    body
}

/// Write a CSV file, creating parent directories as needed.
pub fn write_csv(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, csv_body(header, rows))
        .with_context(|| format!("writing {}", path.display()))
}

/// Minimal reader for the files this tool writes: splits a CSV into a
/// header vector and row vectors, tolerating LF or CRLF endings.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text.lines().filter(|l| !l.is_empty());
    let header = lines
        .next()
        .with_context(|| format!("{} is empty", path.display()))?
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    Ok((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_format_round_trips_and_has_17_digits() {
        for &x in &[0.005, 1.0 / 3.0, -2.5e-17, 123456.75] {
            let s = fmt_value(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let digits: usize = s
                .split('e')
                .next()
                .unwrap()
                .chars()
                .filter(|c| c.is_ascii_digit())
                .count();
            assert_eq!(digits, 17, "{s}");
        }
    }

    #[test]
    fn key_format_is_shortest_exact() {
        assert_eq!(fmt_key(0.03), "0.03");
        assert_eq!(fmt_key(-3.0), "-3");
        assert_eq!(fmt_omega(&[0.1, -2.0]), "0.1;-2");
    }

    #[test]
    fn csv_body_uses_crlf() {
        let body = csv_body("a,b", &["1,2".into()]);
        assert_eq!(body, "a,b\r\n1,2\r\n");
    }
}
