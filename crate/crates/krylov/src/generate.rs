//! Seeded test-matrix generators.
//!
//! All generators are deterministic: the same kind, size and seed give the
//! same matrix, and therefore byte-identical Matrix Market output.

use std::collections::BTreeMap;

use krylov_core::CsrMatrix;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MatrixKind {
    /// Tridiagonal `[-1, 2, -1]` stencil.
    #[value(name = "laplacian1d")]
    Laplacian1d,
    /// 5-point stencil on a `sqrt(n) x sqrt(n)` grid.
    #[value(name = "laplacian2d")]
    Laplacian2d,
    /// Random off-diagonals in `[-1, 1)` with diagonal `1 + sum |off|`.
    #[value(name = "diag_dominant")]
    DiagDominant,
    /// `M^T M + I` for a seeded sparse `M`.
    #[value(name = "spd_random")]
    SpdRandom,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("matrix size must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("laplacian2d needs a perfect square size, got {0}")]
    NotSquareGrid(usize),
}

/// Off-diagonal entries drawn per row by [`diag_dominant`].
pub const OFF_DIAGONAL_PER_ROW: usize = 4;

fn check_size(n: usize) -> Result<(), GenerateError> {
    if n < 2 {
        Err(GenerateError::TooSmall(n))
    } else {
        Ok(())
    }
}

fn from_map(n: usize, entries: BTreeMap<(usize, usize), f64>) -> CsrMatrix {
    let triplets: Vec<_> = entries.into_iter().map(|((i, j), v)| (i, j, v)).collect();
    CsrMatrix::from_triplets(n, n, &triplets).expect("generated indices are in range")
}

pub fn laplacian1d(n: usize) -> Result<CsrMatrix, GenerateError> {
    check_size(n)?;
    let mut t = Vec::with_capacity(3 * n);
    for i in 0..n {
        if i > 0 {
            t.push((i, i - 1, -1.0));
        }
        t.push((i, i, 2.0));
        if i + 1 < n {
            t.push((i, i + 1, -1.0));
        }
    }
    Ok(CsrMatrix::from_triplets(n, n, &t).expect("stencil indices are in range"))
}

pub fn laplacian2d(n: usize) -> Result<CsrMatrix, GenerateError> {
    check_size(n)?;
    let k = n.isqrt();
    if k * k != n {
        return Err(GenerateError::NotSquareGrid(n));
    }
    let mut t = Vec::with_capacity(5 * n);
    for r in 0..k {
        for c in 0..k {
            let i = r * k + c;
            if r > 0 {
                t.push((i, i - k, -1.0));
            }
            if c > 0 {
                t.push((i, i - 1, -1.0));
            }
            t.push((i, i, 4.0));
            if c + 1 < k {
                t.push((i, i + 1, -1.0));
            }
            if r + 1 < k {
                t.push((i, i + k, -1.0));
            }
        }
    }
    Ok(CsrMatrix::from_triplets(n, n, &t).expect("stencil indices are in range"))
}

/// Strictly diagonally dominant matrix with about five entries per row.
///
/// With `symmetric`, off-diagonal pairs share one value (so the matrix is
/// SPD); otherwise every row draws its own columns and values.
pub fn diag_dominant(n: usize, seed: u64, symmetric: bool) -> Result<CsrMatrix, GenerateError> {
    check_size(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_row = OFF_DIAGONAL_PER_ROW.min(n - 1);
    let mut entries = BTreeMap::new();
    for i in 0..n {
        // half as many draws per row when each draw fills a mirrored pair
        let draws = if symmetric { per_row.div_ceil(2) } else { per_row };
        for j in sample(&mut rng, n - 1, draws) {
            let j = if j >= i { j + 1 } else { j };
            let v: f64 = rng.random_range(-1.0..1.0);
            *entries.entry((i, j)).or_insert(0.0) += v;
            if symmetric {
                *entries.entry((j, i)).or_insert(0.0) += v;
            }
        }
    }
    let mut row_sums = vec![0.0; n];
    for (&(i, _), v) in &entries {
        row_sums[i] += f64::abs(*v);
    }
    for (i, s) in row_sums.into_iter().enumerate() {
        entries.insert((i, i), 1.0 + s);
    }
    Ok(from_map(n, entries))
}

/// `M^T M + I` where row `r` of `M` holds a diagonal entry in `[1, 2)` and two
/// off-diagonal entries in `[-0.5, 0.5)`.
pub fn spd_random(n: usize, seed: u64) -> Result<CsrMatrix, GenerateError> {
    check_size(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for r in 0..n {
        let mut row = vec![(r, rng.random_range(1.0..2.0))];
        for j in sample(&mut rng, n - 1, 2.min(n - 1)) {
            let j = if j >= r { j + 1 } else { j };
            row.push((j, rng.random_range(-0.5..0.5)));
        }
        for &(p, mp) in &row {
            for &(q, mq) in &row {
                *entries.entry((p, q)).or_insert(0.0) += mp * mq;
            }
        }
    }
    for i in 0..n {
        *entries.entry((i, i)).or_insert(0.0) += 1.0;
    }
    Ok(from_map(n, entries))
}

/// Dispatches on `kind`; `symmetric` applies to `diag_dominant` only.
pub fn generate(kind: MatrixKind, n: usize, seed: u64, symmetric: bool) -> Result<CsrMatrix, GenerateError> {
    match kind {
        MatrixKind::Laplacian1d => laplacian1d(n),
        MatrixKind::Laplacian2d => laplacian2d(n),
        MatrixKind::DiagDominant => diag_dominant(n, seed, symmetric),
        MatrixKind::SpdRandom => spd_random(n, seed),
    }
}
