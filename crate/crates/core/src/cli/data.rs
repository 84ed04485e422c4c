//! Text formats read and written by the command-line tool.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ica::Sample;
use crate::matrix::Matrix;
use crate::tensor::Tensor;

pub const SEMEION_SIDE: usize = 16;
pub const SEMEION_FIELDS: usize = SEMEION_SIDE * SEMEION_SIDE + 10;

/// One handwritten digit: a 16×16 binary image and its label.
#[derive(Clone, Debug, PartialEq)]
pub struct SemeionRecord {
    /// Mode 1 indexes image rows, mode 2 image columns.
    pub image: Tensor,
    pub label: u8,
}

/// Parses semeion lines: 256 pixel values, row by row, then ten one-hot
/// label flags whose position is the digit. Blank lines are skipped.
pub fn parse_semeion(text: &str) -> Result<Vec<SemeionRecord>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split_whitespace()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: line_no, msg: format!("non-numeric field: {e}") })?;
        if fields.len() != SEMEION_FIELDS {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {SEMEION_FIELDS} fields, found {}", fields.len()),
            });
        }
        let s = SEMEION_SIDE;
        let mut pixels = vec![0.0; s * s];
        for r in 0..s {
            for c in 0..s {
                pixels[r + s * c] = fields[r * s + c];
            }
        }
        let flags = &fields[s * s..];
        let ones: Vec<usize> = (0..10).filter(|&d| flags[d] == 1.0).collect();
        if ones.len() != 1 || flags.iter().any(|&f| f != 0.0 && f != 1.0) {
            return Err(Error::Parse { line: line_no, msg: "label flags must be one-hot".into() });
        }
        out.push(SemeionRecord {
            image: Tensor::new(vec![s, s], pixels)?,
            label: ones[0] as u8,
        });
    }
    Ok(out)
}

/// Writes records back in semeion layout (pixels as `0.0000`/`1.0000`).
pub fn write_semeion(records: &[SemeionRecord]) -> String {
    let s = SEMEION_SIDE;
    let mut out = String::new();
    for rec in records {
        for r in 0..s {
            for c in 0..s {
                let _ = write!(out, "{:.4} ", rec.image.vectorize()[r + s * c]);
            }
        }
        for d in 0..10u8 {
            out.push_str(if d == rec.label { "1" } else { "0" });
            out.push(if d == 9 { '\n' } else { ' ' });
        }
    }
    out
}

/// Headerless CSV, one vectorized tensor of the given dims per row.
pub fn parse_tensor_csv(text: &str, dims: &[usize]) -> Result<Sample> {
    let len: usize = dims.iter().product();
    let mut data = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = parse_csv_row(line, ln + 1)?;
        if row.len() != len {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("expected {len} fields for dims {dims:?}, found {}", row.len()),
            });
        }
        data.extend(row);
    }
    Sample::new(dims.to_vec(), data)
}

/// One vectorized observation per line, shortest round-trip float formatting.
pub fn write_tensor_csv(sample: &Sample) -> String {
    let mut out = String::new();
    for obs in sample.observations() {
        write_row(&mut out, obs);
    }
    out
}

/// A matrix as CSV, one matrix row per line.
pub fn parse_matrix_csv(text: &str) -> Result<Matrix> {
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = parse_csv_row(line, ln + 1)?;
        if let Some(first) = rows.first() {
            let first: &Vec<f64> = first;
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("expected {} fields, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, msg: "empty matrix".into() });
    }
    Ok(Matrix::from_rows(&rows))
}

pub fn write_matrix_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for row in m.to_rows() {
        write_row(&mut out, &row);
    }
    out
}

fn parse_csv_row(line: &str, line_no: usize) -> Result<Vec<f64>> {
    line.split(',')
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse { line: line_no, msg: format!("non-numeric field `{}`", f.trim()) })
        })
        .collect()
}

fn write_row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

/// Parses `3,4` or `3x4` into dims.
pub fn parse_dims(s: &str) -> Result<Vec<usize>> {
    let dims: Vec<usize> = s
        .split([',', 'x'])
        .map(|d| d.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Argument(format!("bad dims `{s}`")))?;
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Argument(format!("bad dims `{s}`")));
    }
    Ok(dims)
}
