//! Zero fill-in incomplete factorizations and their application.
//!
//! Both factorizations restrict every update to the stored pattern of `A`,
//! so `nnz(L) + nnz(U) <= nnz(A) + n`. No pivoting or reordering is done.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::{CsrMatrix, DenseMatrix, DenseVector, Error, Preconditioner, Result};

/// Pivots with `|u_ii| <= PIVOT_TOL * max_j |a_ij|` are treated as zero.
pub const PIVOT_TOL: f64 = 1e-14;

/// Symmetry tolerance applied before IC(0).
pub const SYMMETRY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Identity,
    Ilu0,
    Ic0,
}

/// Triangular factors of a preconditioner `M`.
///
/// `lower` always stores its diagonal explicitly as the last entry of each
/// row (all ones for ILU(0)). `upper` is present only for ILU(0) and keeps
/// its diagonal as the first entry of each row. For IC(0), `M = L L^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularFactors {
    kind: FactorKind,
    lower: CsrMatrix,
    upper: Option<CsrMatrix>,
    ops: u64,
}

impl TriangularFactors {
    pub fn identity(n: usize) -> Self {
        Self { kind: FactorKind::Identity, lower: CsrMatrix::identity(n), upper: None, ops: 0 }
    }

    /// Assembles factors from explicit triangles, checking their shape.
    pub fn from_parts(kind: FactorKind, lower: CsrMatrix, upper: Option<CsrMatrix>) -> Result<Self> {
        let n = lower.n_rows();
        if !lower.is_square() {
            return Err(Error::NotSquare { rows: lower.n_rows(), cols: lower.n_cols() });
        }
        check_lower(&lower)?;
        match (kind, &upper) {
            (FactorKind::Ilu0, Some(u)) => {
                if u.n_rows() != n || !u.is_square() {
                    return Err(Error::DimensionMismatch { expected: n, found: u.n_rows() });
                }
                check_upper(u)?;
            }
            (FactorKind::Ilu0, None) => {
                return Err(Error::InvalidStructure("ILU(0) factors need an upper triangle"));
            }
            (_, Some(_)) => {
                return Err(Error::InvalidStructure("only ILU(0) factors carry an upper triangle"));
            }
            (_, None) => {}
        }
        Ok(Self { kind, lower, upper, ops: 0 })
    }

    /// Factorizes `a` according to `selector`; failures are wrapped in
    /// [`Error::Preconditioner`].
    pub fn build(a: &CsrMatrix, selector: Preconditioner) -> Result<Self> {
        let built = match selector {
            Preconditioner::None => {
                if !a.is_square() {
                    return Err(Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
                }
                Ok(Self::identity(a.n_rows()))
            }
            Preconditioner::Ilu0 => ilu0(a),
            Preconditioner::Ic0 => ic0(a),
        };
        built.map_err(|e| Error::Preconditioner(Box::new(e)))
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.lower.n_rows()
    }

    pub fn lower(&self) -> &CsrMatrix {
        &self.lower
    }

    pub fn upper(&self) -> Option<&CsrMatrix> {
        self.upper.as_ref()
    }

    /// Multiply-subtract updates performed during factorization.
    pub fn factorization_ops(&self) -> u64 {
        self.ops
    }

    /// Stored entries of the triangles, counting the ILU(0) unit diagonal.
    pub fn nnz(&self) -> usize {
        self.lower.nnz() + self.upper.as_ref().map_or(0, CsrMatrix::nnz)
    }

    /// `M` as a dense matrix (`L U`, `L L^T`, or `I`).
    pub fn product_dense(&self) -> DenseMatrix {
        let l = self.lower.to_dense();
        let r = match (&self.kind, &self.upper) {
            (FactorKind::Ilu0, Some(u)) => u.to_dense(),
            (FactorKind::Ic0, _) => l.transpose(),
            _ => return DenseMatrix::identity(self.dim()),
        };
        l.matmul(&r).expect("square factors")
    }

    /// Solves `M z = r`.
    pub fn apply(&self, r: &DenseVector) -> Result<DenseVector> {
        r.check_len(self.dim())?;
        if self.kind == FactorKind::Identity {
            return Ok(r.clone());
        }
        let mut z = r.to_vec();
        forward_lower(&self.lower, &mut z)?;
        match &self.upper {
            Some(u) => backward_upper(u, &mut z)?,
            None => backward_lower_transpose(&self.lower, &mut z)?,
        }
        DenseVector::from_vec(z)
    }
}

/// Solves `M z = r` with the given factors.
pub fn precond_apply(factors: &TriangularFactors, r: &DenseVector) -> Result<DenseVector> {
    factors.apply(r)
}

fn check_lower(l: &CsrMatrix) -> Result<()> {
    for i in 0..l.n_rows() {
        let (cols, vals) = l.row(i);
        match cols.last() {
            Some(&c) if c == i => {}
            Some(&c) if c > i => return Err(Error::InvalidStructure("lower factor has entries above the diagonal")),
            _ => return Err(Error::MissingDiagonal { row: i }),
        }
        if vals[vals.len() - 1] == 0.0 {
            return Err(Error::ZeroPivot { row: i, value: 0.0 });
        }
    }
    Ok(())
}

fn check_upper(u: &CsrMatrix) -> Result<()> {
    for i in 0..u.n_rows() {
        let (cols, vals) = u.row(i);
        match cols.first() {
            Some(&c) if c == i => {}
            Some(&c) if c < i => return Err(Error::InvalidStructure("upper factor has entries below the diagonal")),
            _ => return Err(Error::MissingDiagonal { row: i }),
        }
        if vals[0] == 0.0 {
            return Err(Error::ZeroPivot { row: i, value: 0.0 });
        }
    }
    Ok(())
}

fn forward_lower(l: &CsrMatrix, z: &mut [f64]) -> Result<()> {
    for i in 0..l.n_rows() {
        let (cols, vals) = l.row(i);
        let last = cols.len() - 1;
        let mut s = z[i];
        for (&j, &v) in cols[..last].iter().zip(&vals[..last]) {
            s -= v * z[j];
        }
        let d = vals[last];
        if d == 0.0 {
            return Err(Error::ZeroPivot { row: i, value: d });
        }
        z[i] = s / d;
    }
    Ok(())
}

fn backward_upper(u: &CsrMatrix, z: &mut [f64]) -> Result<()> {
    for i in (0..u.n_rows()).rev() {
        let (cols, vals) = u.row(i);
        let mut s = z[i];
        for (&j, &v) in cols[1..].iter().zip(&vals[1..]) {
            s -= v * z[j];
        }
        let d = vals[0];
        if d == 0.0 {
            return Err(Error::ZeroPivot { row: i, value: d });
        }
        z[i] = s / d;
    }
    Ok(())
}

/// Solves `L^T z = y` using the row storage of `L` (column sweep).
fn backward_lower_transpose(l: &CsrMatrix, z: &mut [f64]) -> Result<()> {
    for i in (0..l.n_rows()).rev() {
        let (cols, vals) = l.row(i);
        let last = cols.len() - 1;
        let d = vals[last];
        if d == 0.0 {
            return Err(Error::ZeroPivot { row: i, value: d });
        }
        z[i] /= d;
        let zi = z[i];
        for (&j, &v) in cols[..last].iter().zip(&vals[..last]) {
            z[j] -= v * zi;
        }
    }
    Ok(())
}

fn diagonal_offsets(a: &CsrMatrix) -> Result<Vec<usize>> {
    (0..a.n_rows()).map(|i| a.find(i, i).ok_or(Error::MissingDiagonal { row: i })).collect()
}

/// ILU(0) by row-wise IKJ elimination restricted to the pattern of `a`.
///
/// `(L U)[i][j] = a[i][j]` at every stored position; the discarded fill
/// lives only outside the pattern.
pub fn ilu0(a: &CsrMatrix) -> Result<TriangularFactors> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
    }
    let n = a.n_rows();
    let diag = diagonal_offsets(a)?;
    let row_ptr = a.row_ptr();
    let col_idx = a.col_idx();
    let mut lu = a.values().to_vec();
    let mut position = vec![usize::MAX; n];
    let mut ops = 0u64;

    for i in 0..n {
        let row = row_ptr[i]..row_ptr[i + 1];
        for p in row.clone() {
            position[col_idx[p]] = p;
        }
        for p in row_ptr[i]..diag[i] {
            let k = col_idx[p];
            lu[p] /= lu[diag[k]];
            let lik = lu[p];
            for q in diag[k] + 1..row_ptr[k + 1] {
                let slot = position[col_idx[q]];
                if slot != usize::MAX {
                    lu[slot] -= lik * lu[q];
                    ops += 1;
                }
            }
        }
        let scale = a.values()[row.clone()].iter().fold(0.0, |m: f64, v| m.max(v.abs()));
        let pivot = lu[diag[i]];
        if pivot == 0.0 || pivot.abs() <= PIVOT_TOL * scale {
            return Err(Error::ZeroPivot { row: i, value: pivot });
        }
        for p in row {
            position[col_idx[p]] = usize::MAX;
        }
    }

    let mut lower = Vec::with_capacity(n + diag.iter().enumerate().map(|(i, &d)| d - row_ptr[i]).sum::<usize>());
    let mut upper = Vec::with_capacity(a.nnz());
    for i in 0..n {
        for p in row_ptr[i]..row_ptr[i + 1] {
            let j = col_idx[p];
            if j < i {
                lower.push((i, j, lu[p]));
            } else {
                upper.push((i, j, lu[p]));
            }
        }
        lower.push((i, i, 1.0));
    }
    let lower = CsrMatrix::from_triplets(n, n, &lower)?;
    let upper = CsrMatrix::from_triplets(n, n, &upper)?;
    Ok(TriangularFactors { kind: FactorKind::Ilu0, lower, upper: Some(upper), ops })
}

/// IC(0): lower-triangular `L` on the lower pattern of `a` with
/// `(L L^T)[i][j] = a[i][j]` at every stored lower position.
pub fn ic0(a: &CsrMatrix) -> Result<TriangularFactors> {
    a.check_symmetric(SYMMETRY_TOL)?;
    let n = a.n_rows();
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut col_idx: Vec<usize> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut ops = 0u64;
    row_ptr.push(0);

    for i in 0..n {
        let start = col_idx.len();
        let (cols, vals) = a.row(i);
        for (&j, &aij) in cols.iter().zip(vals) {
            if j > i {
                break;
            }
            // sum_{k < j} l_ik l_jk over the shared pattern of rows i and j
            let (mut p, mut q) = (start, row_ptr[j]);
            let q_end = if j == i { col_idx.len() } else { row_ptr[j + 1] };
            let mut s = aij;
            while p < col_idx.len() && q < q_end {
                let (ci, cj) = (col_idx[p], col_idx[q]);
                if ci >= j || cj >= j {
                    break;
                }
                match ci.cmp(&cj) {
                    core::cmp::Ordering::Less => p += 1,
                    core::cmp::Ordering::Greater => q += 1,
                    core::cmp::Ordering::Equal => {
                        s -= values[p] * values[q];
                        ops += 1;
                        p += 1;
                        q += 1;
                    }
                }
            }
            let value = if j < i {
                s / values[row_ptr[j + 1] - 1]
            } else {
                if !(s > 0.0) {
                    return Err(Error::NonPositivePivot { row: i, value: s });
                }
                libm::sqrt(s)
            };
            col_idx.push(j);
            values.push(value);
        }
        if col_idx.last() != Some(&i) || col_idx.len() == start {
            return Err(Error::MissingDiagonal { row: i });
        }
        row_ptr.push(col_idx.len());
    }
    let lower = CsrMatrix::new(n, n, row_ptr, col_idx, values)?;
    Ok(TriangularFactors { kind: FactorKind::Ic0, lower, upper: None, ops })
}
