//! Compressed sparse row storage.

use alloc::vec;
use alloc::vec::Vec;

use crate::vector::dot;
use crate::{DenseMatrix, DenseVector, Error, Result};

/// Compressed sparse row matrix.
///
/// Invariants (checked by every constructor): `row_ptr` has `n_rows + 1`
/// non-decreasing entries starting at 0 and ending at `nnz`, column indices
/// are strictly increasing within a row and below `n_cols`, and no value is
/// NaN. Explicitly stored zeros are kept; they are part of the pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    pub fn new(
        n_rows: usize,
        n_cols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if row_ptr.len() != n_rows + 1 {
            return Err(Error::InvalidStructure("row_ptr length must be n_rows + 1"));
        }
        if row_ptr[0] != 0 {
            return Err(Error::InvalidStructure("row_ptr must start at 0"));
        }
        if col_idx.len() != values.len() || row_ptr[n_rows] != values.len() {
            return Err(Error::InvalidStructure("row_ptr[n_rows] must equal nnz"));
        }
        for w in row_ptr.windows(2) {
            if w[1] < w[0] {
                return Err(Error::InvalidStructure("row_ptr must be non-decreasing"));
            }
            let cols = &col_idx[w[0]..w[1]];
            if cols.windows(2).any(|c| c[1] <= c[0]) {
                return Err(Error::InvalidStructure("column indices must increase within a row"));
            }
            if cols.last().is_some_and(|&c| c >= n_cols) {
                return Err(Error::InvalidStructure("column index out of range"));
            }
        }
        if let Some(index) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::NotANumber { index });
        }
        Ok(Self { n_rows, n_cols, row_ptr, col_idx, values })
    }

    /// Builds a matrix from `(row, col, value)` triplets in any order.
    /// Duplicate positions are summed.
    pub fn from_triplets(n_rows: usize, n_cols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut sorted: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
        for &(i, j, v) in triplets {
            if i >= n_rows || j >= n_cols {
                return Err(Error::InvalidStructure("triplet index out of range"));
            }
            sorted.push((i, j, v));
        }
        sorted.sort_by_key(|t| (t.0, t.1));

        let mut row_ptr = vec![0usize; n_rows + 1];
        let mut col_idx = Vec::with_capacity(sorted.len());
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in sorted {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            last = Some((i, j));
            row_ptr[i + 1] += 1;
            col_idx.push(j);
            values.push(v);
        }
        for i in 0..n_rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self::new(n_rows, n_cols, row_ptr, col_idx, values)
    }

    /// Sparse copy of a dense matrix, dropping exact zeros.
    pub fn from_dense(a: &DenseMatrix) -> Self {
        let mut row_ptr = Vec::with_capacity(a.n_rows() + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for i in 0..a.n_rows() {
            for (j, &v) in a.row(i).iter().enumerate() {
                if v != 0.0 {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self { n_rows: a.n_rows(), n_cols: a.n_cols(), row_ptr, col_idx, values }
    }

    pub fn identity(n: usize) -> Self {
        Self { n_rows: n, n_cols: n, row_ptr: (0..=n).collect(), col_idx: (0..n).collect(), values: vec![1.0; n] }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.values[r])
    }

    /// Storage offset of entry `(i, j)` if it is in the pattern.
    pub fn find(&self, i: usize, j: usize) -> Option<usize> {
        let (cols, _) = self.row(i);
        cols.binary_search(&j).ok().map(|k| self.row_ptr[i] + k)
    }

    /// Entry `(i, j)`, zero outside the pattern.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.find(i, j).map_or(0.0, |k| self.values[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n_rows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    /// `y = A x`
    pub fn spmv(&self, x: &DenseVector) -> Result<DenseVector> {
        x.check_len(self.n_cols)?;
        let mut y = vec![0.0; self.n_rows];
        self.spmv_into(x, &mut y);
        Ok(DenseVector::from_raw(y))
    }

    pub(crate) fn spmv_into(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let r = self.row_ptr[i]..self.row_ptr[i + 1];
            *yi = self.col_idx[r.clone()].iter().zip(&self.values[r]).map(|(&j, &v)| v * x[j]).sum();
        }
    }

    /// `b - A x`
    pub fn residual(&self, b: &DenseVector, x: &DenseVector) -> Result<DenseVector> {
        b.check_len(self.n_rows)?;
        Ok(b.sub(&self.spmv(x)?))
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.n_rows, self.n_cols);
        for (i, j, v) in self.iter() {
            d[(i, j)] = v;
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.n_cols + 1];
        for &j in &self.col_idx {
            counts[j + 1] += 1;
        }
        for j in 0..self.n_cols {
            counts[j + 1] += counts[j];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut col_idx = vec![0; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        for (i, j, v) in self.iter() {
            let k = next[j];
            col_idx[k] = i;
            values[k] = v;
            next[j] += 1;
        }
        Self { n_rows: self.n_cols, n_cols: self.n_rows, row_ptr, col_idx, values }
    }

    /// Diagonal entries (zero where not stored).
    pub fn diagonal(&self) -> DenseVector {
        DenseVector::from_raw((0..self.n_rows.min(self.n_cols)).map(|i| self.get(i, i)).collect())
    }

    /// Largest absolute stored value.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }

    /// Checks `|a_ij - a_ji| <= tol * max(1, |a_ij|, |a_ji|)` for every
    /// stored entry, reporting the first offending pair.
    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.n_rows, cols: self.n_cols });
        }
        for (i, j, v) in self.iter() {
            if j <= i {
                continue;
            }
            let w = self.get(j, i);
            if (v - w).abs() > tol * f64::max(1.0, f64::max(v.abs(), w.abs())) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
        // entries stored only below the diagonal
        for (i, j, v) in self.iter() {
            if j < i && self.find(j, i).is_none() && v.abs() > tol * f64::max(1.0, v.abs()) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
        Ok(())
    }

    /// Whether every stored entry of `other` lies in this matrix's pattern.
    pub fn pattern_contains(&self, other: &Self) -> bool {
        other.n_rows == self.n_rows
            && other.n_cols == self.n_cols
            && other.iter().all(|(i, j, _)| self.find(i, j).is_some())
    }

    /// Row `i` dotted with a dense vector.
    pub fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        let (cols, vals) = self.row(i);
        let gathered: Vec<f64> = cols.iter().map(|&j| x[j]).collect();
        dot(vals, &gathered)
    }
}
