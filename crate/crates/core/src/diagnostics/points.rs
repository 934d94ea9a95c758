//! Point sets as `p <x> <y>` lines.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

pub fn emit(points: &[Complex64]) -> String {
    let mut out = String::with_capacity(points.len() * 40);
    for z in points {
        writeln!(out, "p {} {}", z.re, z.im).unwrap();
    }
    out
}

/// Reads `p` lines; blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> Result<Vec<Complex64>, PointParseError> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: &str| PointParseError::Malformed {
            line: i + 1,
            message: message.to_string(),
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["p", x, y] => {
                let x: f64 = x.parse().map_err(|_| bad("bad x coordinate"))?;
                let y: f64 = y.parse().map_err(|_| bad("bad y coordinate"))?;
                if !x.is_finite() || !y.is_finite() {
                    return Err(bad("coordinates must be finite"));
                }
                points.push(Complex64::new(x, y));
            }
            _ => return Err(bad("expected `p <x> <y>`")),
        }
    }
    Ok(points)
}
