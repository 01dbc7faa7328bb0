//! Plain-text emitters shared by the solvers and the experiment harness.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Result;

/// Shortest form that still carries 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    format!("{v:.16e}")
}

/// CSV text with a header row and one line per record.
pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                s.push(',');
            }
            first = false;
            let _ = write!(s, "{}", fmt_f64(v));
        }
        s.push('\n');
    }
    s
}

pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, csv_string(header, rows))?;
    Ok(())
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.0] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(0.0), "0");
    }

    #[test]
    fn csv_layout() {
        let s = csv_string(&["x", "y"], vec![vec![1.0, 0.0], vec![0.5, -2.0]]);
        assert_eq!(s, "x,y\n1.0000000000000000e0,0\n5.0000000000000000e-1,-2.0000000000000000e0\n");
    }
}
