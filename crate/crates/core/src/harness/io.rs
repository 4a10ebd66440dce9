//! Matrix and report files.
//!
//! Matrices are stored as `{"dim": n, "matrix": [[[re, im], ...], ...]}` in
//! row-major order.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::report::{to_json_17, VerificationReport};
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix, C64};

#[derive(Serialize)]
struct MatrixFile {
    dim: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn entry(v: &Value, i: usize, j: usize) -> Result<C64> {
    let loc = || format!("matrix[{i}][{j}]");
    let pair = v
        .as_array()
        .ok_or_else(|| parse_err(loc(), "expected a [re, im] pair"))?;
    if pair.len() != 2 {
        return Err(parse_err(loc(), format!("expected 2 numbers, found {}", pair.len())));
    }
    let num = |x: &Value, part: &str| -> Result<f64> {
        let f = x
            .as_f64()
            .ok_or_else(|| parse_err(loc(), format!("{part} part is not a number")))?;
        if !f.is_finite() {
            return Err(parse_err(loc(), format!("{part} part is not finite")));
        }
        Ok(f)
    };
    Ok(c64(num(&pair[0], "real")?, num(&pair[1], "imaginary")?))
}

/// Parses the matrix JSON format.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    let dim = root
        .get("dim")
        .ok_or_else(|| parse_err("dim", "missing field"))?
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| parse_err("dim", "expected a positive integer"))? as usize;
    let rows = root
        .get("matrix")
        .ok_or_else(|| parse_err("matrix", "missing field"))?
        .as_array()
        .ok_or_else(|| parse_err("matrix", "expected an array of rows"))?;
    if rows.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rows.len(),
        });
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("matrix[{i}]"), "expected an array"))?;
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: row.len(),
            });
        }
        for (j, v) in row.iter().enumerate() {
            data.push(entry(v, i, j)?);
        }
    }
    ComplexMatrix::from_row_major(dim, &data)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Result<String> {
    let d = m.dim();
    let matrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let z = m.get(i, j);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    to_json_17(&MatrixFile { dim: d, matrix })
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn save_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, matrix_to_json(m)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn save_report(path: impl AsRef<Path>, report: &VerificationReport) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, report.to_json()?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_report(path: impl AsRef<Path>) -> Result<VerificationReport> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    VerificationReport::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_is_exact() {
        let m = ComplexMatrix::from_row_major(
            2,
            &[c64(0.1 + 0.2, -1e-17), c64(1.0 / 3.0, 0.0), c64(-7.5, 2.0f64.sqrt()), c64(0.0, -0.0)],
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        save_matrix(&path, &m).unwrap();
        let back = load_matrix(&path).unwrap();
        for (a, b) in m.as_dmatrix().iter().zip(back.as_dmatrix().iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn errors_point_at_the_entry() {
        let bad = r#"{"dim": 2, "matrix": [[[1,0],[0,0]],[[0,0],["x",0]]]}"#;
        match parse_matrix(bad) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "matrix[1][1]"),
            other => panic!("{other:?}"),
        }
        let short = r#"{"dim": 2, "matrix": [[[1,0],[0,0]],[[0,0]]]}"#;
        assert!(matches!(parse_matrix(short), Err(Error::DimensionMismatch { expected: 2, found: 1 })));
        let rows = r#"{"dim": 3, "matrix": [[[1,0]]]}"#;
        assert!(matches!(parse_matrix(rows), Err(Error::DimensionMismatch { expected: 3, found: 1 })));
        assert!(matches!(parse_matrix("{"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix(r#"{"matrix": []}"#), Err(Error::Parse { .. })));
    }
}
