//! Convergence-history CSV files.
//!
//! Header: `iteration,cycle,absolute_residual,relative_residual`. Reals are
//! written in scientific notation with 17 significant digits, which
//! round-trips every `f64` exactly.

use std::io;
use std::path::Path;

use krylov_core::ResidualEntry;
use thiserror::Error;

pub const HEADER: [&str; 4] = ["iteration", "cycle", "absolute_residual", "relative_residual"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryRecord {
    pub iteration: usize,
    pub cycle: usize,
    pub absolute_residual: f64,
    pub relative_residual: f64,
}

impl From<&ResidualEntry> for HistoryRecord {
    fn from(e: &ResidualEntry) -> Self {
        Self {
            iteration: e.iteration,
            cycle: e.cycle,
            absolute_residual: e.absolute_residual,
            relative_residual: e.relative_residual,
        }
    }
}

#[derive(Debug, Error)]
pub enum HistoryError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("record {record}: {detail}")]
    Record { record: usize, detail: String },
}

pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_csv(records: &[HistoryRecord]) -> Result<String, HistoryError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER)?;
    for r in records {
        w.write_record([
            r.iteration.to_string(),
            r.cycle.to_string(),
            format_real(r.absolute_residual),
            format_real(r.relative_residual),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

/// Parses a history file, checking the header and that iterations strictly
/// increase.
pub fn from_csv(text: &str) -> Result<Vec<HistoryRecord>, HistoryError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?;
    if header.iter().ne(HEADER) {
        return Err(HistoryError::Header(header.iter().map(String::from).collect()));
    }
    let mut out: Vec<HistoryRecord> = Vec::new();
    for (i, row) in r.records().enumerate() {
        let row = row?;
        let bad = |detail: String| HistoryError::Record { record: i + 1, detail };
        let field = |k: usize| row.get(k).ok_or_else(|| bad(format!("missing field {}", HEADER[k])));
        let rec = HistoryRecord {
            iteration: field(0)?.parse().map_err(|e| bad(format!("iteration: {e}")))?,
            cycle: field(1)?.parse().map_err(|e| bad(format!("cycle: {e}")))?,
            absolute_residual: field(2)?.parse().map_err(|e| bad(format!("absolute_residual: {e}")))?,
            relative_residual: field(3)?.parse().map_err(|e| bad(format!("relative_residual: {e}")))?,
        };
        if let Some(prev) = out.last() {
            if rec.iteration <= prev.iteration {
                return Err(bad(format!("iteration {} does not follow {}", rec.iteration, prev.iteration)));
            }
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn write_history(path: &Path, history: &[ResidualEntry]) -> Result<(), HistoryError> {
    let records: Vec<HistoryRecord> = history.iter().map(HistoryRecord::from).collect();
    crate::write_atomic(path, to_csv(&records)?.as_bytes())?;
    Ok(())
}

pub fn read_history(path: &Path) -> Result<Vec<HistoryRecord>, HistoryError> {
    from_csv(&std::fs::read_to_string(path)?)
}
