//! Least squares `min |beta e1 - H y|_2` for an `(m+1) x m` upper Hessenberg
//! `H`, reduced to triangular form by Givens rotations one column at a time.
//!
//! After each pushed column the minimum residual is `|g[j+1]|`, the last
//! entry of the rotated right-hand side, so GMRES can monitor convergence
//! without solving for `y`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{DenseMatrix, DenseVector, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GivensLsq {
    /// Column `j` holds `R[0..=j][j]`.
    r: Vec<Vec<f64>>,
    rotations: Vec<(f64, f64)>,
    g: Vec<f64>,
}

impl GivensLsq {
    pub fn new(beta: f64) -> Self {
        Self { r: Vec::new(), rotations: Vec::new(), g: vec![beta] }
    }

    pub fn columns(&self) -> usize {
        self.r.len()
    }

    /// Appends Hessenberg column `j` (length `j + 2`) and returns the new
    /// least-squares residual norm.
    pub fn push_column(&mut self, h_column: &[f64]) -> Result<f64> {
        let j = self.r.len();
        if h_column.len() != j + 2 {
            return Err(Error::DimensionMismatch { expected: j + 2, found: h_column.len() });
        }
        let mut col = h_column.to_vec();
        for (i, &(c, s)) in self.rotations.iter().enumerate() {
            let (a, b) = (col[i], col[i + 1]);
            col[i] = c * a + s * b;
            col[i + 1] = -s * a + c * b;
        }
        let (a, b) = (col[j], col[j + 1]);
        let rho = libm::hypot(a, b);
        if rho == 0.0 {
            return Err(Error::RankDeficient { column: j });
        }
        let (c, s) = (a / rho, b / rho);
        col[j] = rho;
        col.truncate(j + 1);
        self.r.push(col);
        self.rotations.push((c, s));
        let gj = self.g[j];
        self.g[j] = c * gj;
        self.g.push(-s * gj);
        Ok(self.residual())
    }

    pub fn residual(&self) -> f64 {
        self.g.last().map_or(0.0, |g| g.abs())
    }

    /// Back substitution on the triangular factor.
    pub fn solve(&self) -> Vec<f64> {
        let m = self.r.len();
        let mut y = self.g[..m].to_vec();
        for i in (0..m).rev() {
            let s: f64 = (i + 1..m).map(|k| self.r[k][i] * y[k]).sum();
            y[i] = (y[i] - s) / self.r[i][i];
        }
        y
    }
}

/// Minimizes `|beta e1 - H y|_2` over `y`; returns `y` and the minimum.
pub fn hessenberg_lsq(h: &DenseMatrix, beta: f64) -> Result<(DenseVector, f64)> {
    let m = h.n_cols();
    if h.n_rows() != m + 1 {
        return Err(Error::DimensionMismatch { expected: m + 1, found: h.n_rows() });
    }
    if !(beta >= 0.0) {
        return Err(Error::InvalidConfig("beta must be non-negative"));
    }
    for j in 0..m {
        if (j + 2..=m).any(|i| h[(i, j)] != 0.0) {
            return Err(Error::InvalidStructure("matrix is not upper Hessenberg"));
        }
    }
    let mut lsq = GivensLsq::new(beta);
    let mut col = Vec::with_capacity(m + 1);
    for j in 0..m {
        col.clear();
        col.extend((0..j + 2).map(|i| h[(i, j)]));
        lsq.push_column(&col)?;
    }
    Ok((DenseVector::from_vec(lsq.solve())?, lsq.residual()))
}
