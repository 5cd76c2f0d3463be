//! Arnoldi process with modified Gram-Schmidt.
//!
//! Each new direction `w = op(v_j)` is orthogonalized against the stored
//! basis one column at a time, subtracting every projection as soon as it
//! is computed. The step breaks down when `h[j+1][j] <= 1e-14 * |op(v_j)|`,
//! meaning the Krylov subspace is invariant under the operator, or when the
//! basis already spans all of `R^n`. The basis is then truncated at `m = j`
//! and the square relation `A V_j = V_j H_j` holds.
//!
//! No reorthogonalization pass is made, so orthogonality of the computed
//! basis degrades as the Krylov residual of `v1` drops toward rounding level
//! (quickly converging, clustered spectra). GMRES iterates are unaffected.

use alloc::vec::Vec;

use crate::vector::{axpy, dot, norm2};
use crate::{CsrMatrix, DenseMatrix, DenseVector, Error, Result};

/// Relative threshold on `h[j+1][j]` below which the subspace is invariant.
pub const BREAKDOWN_TOL: f64 = 1e-14;

/// Tolerance on `|v1|_2 - 1` accepted by [`arnoldi_expand`].
pub const UNIT_TOL: f64 = 1e-12;

/// Orthonormal Krylov basis and its Hessenberg companion.
#[derive(Debug, Clone, PartialEq)]
pub struct KrylovBasis {
    /// `v_1 .. v_{m+1}`, or `v_1 .. v_m` after a breakdown.
    pub columns: Vec<DenseVector>,
    /// `(m+1) x m` upper Hessenberg matrix. After a breakdown the last row
    /// holds the vanished `h[m+1][m]`.
    pub h: DenseMatrix,
    /// Completed steps.
    pub m: usize,
    /// 1-based step at which `h[j+1][j]` vanished.
    pub breakdown: Option<usize>,
}

impl KrylovBasis {
    /// Leading `m x m` block of `h`.
    pub fn square_h(&self) -> DenseMatrix {
        let mut sq = DenseMatrix::zeros(self.m, self.m);
        for i in 0..self.m {
            for j in 0..self.m {
                sq[(i, j)] = self.h[(i, j)];
            }
        }
        sq
    }

    /// Largest `|v_i . v_j - delta_ij|` over the stored columns.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, vi) in self.columns.iter().enumerate() {
            for (j, vj) in self.columns.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((vi.dot(vj) - target).abs());
            }
        }
        worst
    }
}

/// Outcome of one Arnoldi step.
#[derive(Debug, Clone, PartialEq)]
pub struct ArnoldiStep {
    /// New Hessenberg column `h[0..=j+1][j]`, length `j + 2`.
    pub h_column: Vec<f64>,
    /// `|op(v_j)|_2` before orthogonalization.
    pub operator_norm: f64,
    pub breakdown: bool,
}

/// Incremental Arnoldi process; GMRES drives it one step at a time.
#[derive(Debug, Clone)]
pub struct Arnoldi {
    columns: Vec<DenseVector>,
    h_columns: Vec<Vec<f64>>,
    breakdown: Option<usize>,
}

impl Arnoldi {
    pub fn new(v1: DenseVector) -> Result<Self> {
        let norm = v1.norm2();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitStart { norm });
        }
        Ok(Self { columns: alloc::vec![v1], h_columns: Vec::new(), breakdown: None })
    }

    pub fn steps(&self) -> usize {
        self.h_columns.len()
    }

    pub fn columns(&self) -> &[DenseVector] {
        &self.columns
    }

    pub fn breakdown(&self) -> Option<usize> {
        self.breakdown
    }

    /// Runs one step on the newest basis column.
    pub fn step<F>(&mut self, op: &mut F) -> Result<ArnoldiStep>
    where
        F: FnMut(&DenseVector) -> Result<DenseVector>,
    {
        if self.breakdown.is_some() {
            return Err(Error::InvalidConfig("Arnoldi step after breakdown"));
        }
        let j = self.h_columns.len();
        let n = self.columns[0].len();
        let mut w = op(&self.columns[j])?;
        w.check_len(n)?;
        let operator_norm = w.norm2();

        let mut h_column = Vec::with_capacity(j + 2);
        for v in &self.columns[..=j] {
            let hij = dot(&w, v);
            axpy(-hij, v, w.as_mut_slice());
            h_column.push(hij);
        }
        let next = norm2(&w);
        h_column.push(next);

        // once j + 1 = n columns exist, whatever is left of w is rounding
        let breakdown = next <= BREAKDOWN_TOL * operator_norm || j + 1 == n;
        if breakdown {
            self.breakdown = Some(j + 1);
        } else {
            w.scale(1.0 / next);
            self.columns.push(w);
        }
        self.h_columns.push(h_column.clone());
        Ok(ArnoldiStep { h_column, operator_norm, breakdown })
    }

    /// Freezes the process into an immutable basis.
    pub fn into_basis(self) -> KrylovBasis {
        let m = self.h_columns.len();
        let mut h = DenseMatrix::zeros(m + 1, m);
        for (j, col) in self.h_columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                h[(i, j)] = v;
            }
        }
        KrylovBasis { columns: self.columns, h, m, breakdown: self.breakdown }
    }
}

/// Builds up to `m` Arnoldi steps of `op` from the unit vector `v1`,
/// stopping early on breakdown.
pub fn arnoldi_expand<F>(mut op: F, v1: DenseVector, m: usize) -> Result<KrylovBasis>
where
    F: FnMut(&DenseVector) -> Result<DenseVector>,
{
    if m == 0 {
        return Err(Error::InvalidConfig("Arnoldi needs m >= 1"));
    }
    let mut arnoldi = Arnoldi::new(v1)?;
    for _ in 0..m {
        if arnoldi.step(&mut op)?.breakdown {
            break;
        }
    }
    Ok(arnoldi.into_basis())
}

/// Max-norm of `A V_m - V_{m+1} H_m`, or of `A V_m - V_m H_m` (square) when
/// the basis broke down.
pub fn arnoldi_relation_residual(a: &CsrMatrix, basis: &KrylovBasis) -> Result<f64> {
    let m = basis.m;
    let n = a.n_rows();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
    }
    let stored = if basis.breakdown.is_some() { m } else { m + 1 };
    if basis.columns.len() < stored || basis.h.n_rows() != m + 1 || basis.h.n_cols() != m {
        return Err(Error::DimensionMismatch { expected: stored, found: basis.columns.len() });
    }
    let mut worst: f64 = 0.0;
    for j in 0..m {
        let mut r = a.spmv(&basis.columns[j])?;
        r.check_len(n)?;
        for (i, v) in basis.columns[..stored].iter().enumerate() {
            axpy(-basis.h[(i, j)], v, r.as_mut_slice());
        }
        worst = worst.max(r.norm_inf());
    }
    Ok(worst)
}
