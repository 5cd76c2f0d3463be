//! Small dense reference computations.
//!
//! These are independent of the Krylov code paths and are used to report
//! true errors. They refuse inputs above [`ORACLE_MAX_DIM`].

use alloc::vec::Vec;

use crate::{DenseMatrix, DenseVector, Error, Result};

pub const ORACLE_MAX_DIM: usize = 512;

fn check_oracle_dim(a: &DenseMatrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
    }
    let n = a.n_rows();
    if n > ORACLE_MAX_DIM {
        return Err(Error::OracleTooLarge { n, limit: ORACLE_MAX_DIM });
    }
    Ok(n)
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot below `n * eps * max|a_ij|` is treated as singular.
pub fn dense_solve_oracle(a: &DenseMatrix, b: &DenseVector) -> Result<DenseVector> {
    let n = check_oracle_dim(a)?;
    b.check_len(n)?;
    let mut m = a.clone();
    let mut x: Vec<f64> = b.to_vec();
    let scale = m.as_slice().iter().fold(0.0, |s: f64, v| s.max(v.abs()));
    let tiny = n as f64 * f64::EPSILON * scale;

    for k in 0..n {
        let (p, pivot) =
            (k..n).map(|i| (i, m[(i, k)].abs())).fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot <= tiny || pivot == 0.0 {
            return Err(Error::Singular { column: k });
        }
        if p != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = t;
            }
            x.swap(k, p);
        }
        for i in k + 1..n {
            let f = m[(i, k)] / m[(k, k)];
            if f == 0.0 {
                continue;
            }
            m[(i, k)] = 0.0;
            for j in k + 1..n {
                m[(i, j)] -= f * m[(k, j)];
            }
            x[i] -= f * x[k];
        }
    }
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[(i, j)] * x[j]).sum();
        x[i] = (x[i] - s) / m[(i, i)];
    }
    DenseVector::from_vec(x)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, unsorted.
pub fn symmetric_eigenvalues(a: &DenseMatrix) -> Result<Vec<f64>> {
    let n = check_oracle_dim(a)?;
    let scale = a.as_slice().iter().fold(0.0, |s: f64, v| s.max(v.abs()));
    for i in 0..n {
        for j in i + 1..n {
            if (a[(i, j)] - a[(j, i)]).abs() > 1e-12 * scale.max(1.0) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    let mut m = a.clone();
    let frob = libm::sqrt(m.as_slice().iter().map(|v| v * v).sum::<f64>());
    let off_norm = |m: &DenseMatrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)] * m[(i, j)];
                }
            }
        }
        libm::sqrt(s)
    };

    for _sweep in 0..100 {
        let off = off_norm(&m);
        if off <= 1e-15 * frob || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    Ok((0..n).map(|i| m[(i, i)]).collect())
}

/// `lambda_max / lambda_min` of a symmetric positive definite matrix.
pub fn condition_number_spd_oracle(a: &DenseMatrix) -> Result<f64> {
    let eig = symmetric_eigenvalues(a)?;
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min <= 0.0 {
        return Err(Error::NotPositiveDefinite { eigenvalue: min });
    }
    Ok(max / min)
}
