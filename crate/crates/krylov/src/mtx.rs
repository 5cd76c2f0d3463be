//! Matrix Market reading and writing.
//!
//! Matrices must use the `coordinate` format with a `real` (or `integer`)
//! field and `general` or `symmetric` symmetry. Symmetric files store one
//! triangle; off-diagonal entries are mirrored on load. Duplicate entries
//! are summed. Indices are 1-based in files and 0-based in memory.
//!
//! Right-hand sides may be Matrix Market `n x 1` (coordinate or array) or
//! plain text with one value per line.

use std::fmt::Write as _;

use krylov_core::{CsrMatrix, DenseVector};
use thiserror::Error;

/// Parse failures; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MtxError {
    #[error("line {line}: malformed Matrix Market banner")]
    MalformedBanner { line: usize },

    #[error("line {line}: unsupported Matrix Market format: {detail}")]
    UnsupportedFormat { line: usize, detail: String },

    #[error("line {line}: field `{field}` is not real")]
    NonRealField { line: usize, field: String },

    #[error("line {line}: malformed size line")]
    BadSize { line: usize },

    #[error("line {line}: malformed entry")]
    BadEntry { line: usize },

    #[error("line {line}: entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { line: usize, row: usize, col: usize, rows: usize, cols: usize },

    #[error("line {line}: expected {expected} entries, found {found}")]
    Truncated { line: usize, expected: usize, found: usize },

    #[error("line {line}: more entries than the {expected} declared")]
    TrailingData { line: usize, expected: usize },

    #[error("line {line}: NaN value")]
    NotANumber { line: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy)]
struct Header {
    layout: Layout,
    symmetric: bool,
}

fn parse_banner(line: &str) -> Result<Header, MtxError> {
    let malformed = MtxError::MalformedBanner { line: 1 };
    let mut tokens = line.split_whitespace();
    if !tokens.next().is_some_and(|t| t.eq_ignore_ascii_case("%%MatrixMarket")) {
        return Err(malformed);
    }
    let rest: Vec<String> = tokens.map(str::to_ascii_lowercase).collect();
    let [object, format, field, symmetry] = rest.as_slice() else {
        return Err(malformed);
    };
    let unsupported = |detail: String| MtxError::UnsupportedFormat { line: 1, detail };
    if object != "matrix" {
        return Err(unsupported(format!("object `{object}`")));
    }
    let layout = match format.as_str() {
        "coordinate" => Layout::Coordinate,
        "array" => Layout::Array,
        other => return Err(unsupported(format!("format `{other}`"))),
    };
    match field.as_str() {
        "real" | "integer" | "double" => {}
        "complex" | "pattern" => return Err(MtxError::NonRealField { line: 1, field: field.clone() }),
        other => return Err(unsupported(format!("field `{other}`"))),
    }
    let symmetric = match symmetry.as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(unsupported(format!("symmetry `{other}`"))),
    };
    Ok(Header { layout, symmetric })
}

/// Non-comment, non-blank lines after the banner, with 1-based numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

fn parse_value(token: &str, line: usize) -> Result<f64, MtxError> {
    let v: f64 = token.parse().map_err(|_| MtxError::BadEntry { line })?;
    if v.is_nan() {
        return Err(MtxError::NotANumber { line });
    }
    Ok(v)
}

fn parse_sizes<const N: usize>(line: &str, number: usize) -> Result<[usize; N], MtxError> {
    let parsed: Vec<usize> = line
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| MtxError::BadSize { line: number })?;
    parsed.try_into().map_err(|_| MtxError::BadSize { line: number })
}

/// `(rows, cols, triplets)` with 0-based indices.
type Coordinate = (usize, usize, Vec<(usize, usize, f64)>);

/// Coordinate triplets, expanded for symmetric files.
fn parse_coordinate(text: &str, symmetric: bool) -> Result<Coordinate, MtxError> {
    let mut lines = data_lines(text);
    let last_line = text.lines().count().max(1);
    let (size_no, size_line) = lines.next().ok_or(MtxError::BadSize { line: last_line })?;
    let [rows, cols, nnz] = parse_sizes::<3>(size_line, size_no)?;

    let mut triplets = Vec::with_capacity(if symmetric { 2 * nnz } else { nnz });
    let mut found = 0;
    for (no, line) in lines {
        if found == nnz {
            return Err(MtxError::TrailingData { line: no, expected: nnz });
        }
        let mut tokens = line.split_whitespace();
        let (Some(i), Some(j), Some(v), None) = (tokens.next(), tokens.next(), tokens.next(), tokens.next()) else {
            return Err(MtxError::BadEntry { line: no });
        };
        let i: usize = i.parse().map_err(|_| MtxError::BadEntry { line: no })?;
        let j: usize = j.parse().map_err(|_| MtxError::BadEntry { line: no })?;
        let v = parse_value(v, no)?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(MtxError::IndexOutOfRange { line: no, row: i, col: j, rows, cols });
        }
        triplets.push((i - 1, j - 1, v));
        if symmetric && i != j {
            triplets.push((j - 1, i - 1, v));
        }
        found += 1;
    }
    if found < nnz {
        return Err(MtxError::Truncated { line: last_line + 1, expected: nnz, found });
    }
    Ok((rows, cols, triplets))
}

/// Parses a coordinate Matrix Market matrix.
pub fn parse_matrix_market(text: &str) -> Result<CsrMatrix, MtxError> {
    let banner = text.lines().next().ok_or(MtxError::MalformedBanner { line: 1 })?;
    let header = parse_banner(banner)?;
    if header.layout == Layout::Array {
        return Err(MtxError::UnsupportedFormat { line: 1, detail: "dense `array` format".into() });
    }
    let (rows, cols, triplets) = parse_coordinate(text, header.symmetric)?;
    Ok(CsrMatrix::from_triplets(rows, cols, &triplets).expect("indices checked during parsing"))
}

/// Serializes as `coordinate real general` with shortest round-trip values.
pub fn write_matrix_market(a: &CsrMatrix) -> String {
    let mut out = String::with_capacity(32 * (a.nnz() + 2));
    out.push_str("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(out, "{} {} {}", a.n_rows(), a.n_cols(), a.nnz());
    for (i, j, v) in a.iter() {
        let _ = writeln!(out, "{} {} {:e}", i + 1, j + 1, v);
    }
    out
}

/// Parses a right-hand side: Matrix Market `n x 1` or one value per line.
pub fn parse_vector(text: &str) -> Result<DenseVector, MtxError> {
    let Some(banner) = text.lines().next() else {
        return Ok(DenseVector::zeros(0));
    };
    if !banner.trim_start().starts_with("%%") {
        let values = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .map(|(no, l)| parse_value(l, no))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(DenseVector::from_vec(values).expect("NaN rejected while parsing"));
    }

    let header = parse_banner(banner)?;
    let values = match header.layout {
        Layout::Coordinate => {
            let (rows, cols, triplets) = parse_coordinate(text, header.symmetric)?;
            if cols != 1 {
                return Err(MtxError::UnsupportedFormat { line: 1, detail: format!("{rows}x{cols} is not a vector") });
            }
            let mut v = vec![0.0; rows];
            for (i, _, x) in triplets {
                v[i] += x;
            }
            v
        }
        Layout::Array => {
            let mut lines = data_lines(text);
            let last_line = text.lines().count();
            let (no, size) = lines.next().ok_or(MtxError::BadSize { line: last_line })?;
            let [rows, cols] = parse_sizes::<2>(size, no)?;
            if cols != 1 {
                return Err(MtxError::UnsupportedFormat { line: no, detail: format!("{rows}x{cols} is not a vector") });
            }
            let mut v = Vec::with_capacity(rows);
            for (no, line) in lines {
                if v.len() == rows {
                    return Err(MtxError::TrailingData { line: no, expected: rows });
                }
                v.push(parse_value(line, no)?);
            }
            if v.len() < rows {
                return Err(MtxError::Truncated { line: last_line + 1, expected: rows, found: v.len() });
            }
            v
        }
    };
    Ok(DenseVector::from_vec(values).expect("NaN rejected while parsing"))
}

/// One value per line with 17 significant digits.
pub fn write_vector(v: &[f64]) -> String {
    let mut out = String::with_capacity(24 * v.len());
    for x in v {
        let _ = writeln!(out, "{x:.16e}");
    }
    out
}
