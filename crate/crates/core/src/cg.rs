//! Conjugate gradients for symmetric positive definite systems.
//!
//! With `g_k = A x_k - b` the gradient of `f(x) = x^T A x / 2 - b^T x` and
//! `z_k = M^-1 g_k` (`z_k = g_k` without a preconditioner):
//!
//! ```text
//! d_0     = -z_0
//! alpha_k = -(g_k . d_k) / (d_k . A d_k)
//! x_k+1   = x_k + alpha_k d_k
//! g_k+1   = g_k + alpha_k A d_k
//! beta_k+1 = (z_k+1 . A d_k) / (d_k . A d_k)
//! d_k+1   = -z_k+1 + beta_k+1 d_k
//! ```
//!
//! The preconditioner enters only through `z`, which keeps the iteration
//! symmetric in the `M`-inner product. Convergence is measured on the
//! unpreconditioned `|g_k| / |b|`.

use alloc::vec::Vec;

use crate::gmres::check_system;
use crate::precond::SYMMETRY_TOL;
use crate::{
    CsrMatrix, DenseVector, Error, ResidualEntry, Result, SolveReport, SolverConfig, Status, TriangularFactors,
};

/// Iteration state handed to observers after each step.
#[derive(Debug, Clone, PartialEq)]
pub struct CgState {
    pub x: DenseVector,
    /// Gradient `A x - b`.
    pub g: DenseVector,
    /// Next search direction.
    pub d: DenseVector,
    /// Step length used to reach `x` (0 at `k = 0`).
    pub alpha: f64,
    /// Coefficient used to build `d` (0 at `k = 0`).
    pub beta_cg: f64,
    pub k: usize,
}

pub fn cg_solve(a: &CsrMatrix, b: &DenseVector, x0: &DenseVector, config: &SolverConfig) -> Result<SolveReport> {
    config.validate()?;
    check_system(a, b, x0)?;
    a.check_symmetric(SYMMETRY_TOL)?;
    let factors = TriangularFactors::build(a, config.preconditioner)?;
    cg_solve_observed(a, b, x0, config, &factors, |_| {})
}

/// CG with caller-supplied preconditioner factors.
pub fn cg_solve_with(
    a: &CsrMatrix,
    b: &DenseVector,
    x0: &DenseVector,
    config: &SolverConfig,
    factors: &TriangularFactors,
) -> Result<SolveReport> {
    cg_solve_observed(a, b, x0, config, factors, |_| {})
}

/// CG calling `observer` with the initial state (`k = 0`) and after every
/// iteration.
pub fn cg_solve_observed<F>(
    a: &CsrMatrix,
    b: &DenseVector,
    x0: &DenseVector,
    config: &SolverConfig,
    factors: &TriangularFactors,
    mut observer: F,
) -> Result<SolveReport>
where
    F: FnMut(&CgState),
{
    config.validate()?;
    check_system(a, b, x0)?;
    a.check_symmetric(SYMMETRY_TOL)?;
    if factors.dim() != a.n_rows() {
        return Err(Error::DimensionMismatch { expected: a.n_rows(), found: factors.dim() });
    }
    let n = a.n_rows();
    let b_norm = b.norm2();
    if b_norm == 0.0 {
        return Ok(SolveReport::zero_rhs(n));
    }

    let mut x = x0.clone();
    let mut g = a.spmv(&x)?.sub(b);
    let mut history: Vec<ResidualEntry> = Vec::new();
    let mut record = |k: usize, g: &DenseVector| {
        let abs = g.norm2();
        history.push(ResidualEntry { iteration: k, cycle: 0, absolute_residual: abs, relative_residual: abs / b_norm });
        abs / b_norm
    };
    let mut rel = record(0, &g);
    let mut k = 0usize;

    let status = 'run: {
        if rel <= config.tol {
            break 'run Status::Converged;
        }
        let Ok(mut d) = factors.apply(&g) else {
            break 'run Status::PreconditionerFailure;
        };
        d.scale(-1.0);
        observer(&CgState { x: x.clone(), g: g.clone(), d: d.clone(), alpha: 0.0, beta_cg: 0.0, k });

        loop {
            if k >= config.max_iterations {
                break 'run Status::BudgetExhausted;
            }
            let ad = a.spmv(&d)?;
            let curvature = d.dot(&ad);
            if !(curvature > 0.0) {
                return Err(Error::Indefinite { iteration: k + 1, curvature });
            }
            let alpha = -g.dot(&d) / curvature;
            x.axpy(alpha, &d);
            g.axpy(alpha, &ad);
            k += 1;
            rel = record(k, &g);

            let Ok(z) = factors.apply(&g) else {
                break 'run Status::PreconditionerFailure;
            };
            let beta_cg = z.dot(&ad) / curvature;
            d.scale(beta_cg);
            d.axpy(-1.0, &z);
            observer(&CgState { x: x.clone(), g: g.clone(), d: d.clone(), alpha, beta_cg, k });

            if rel <= config.tol {
                break 'run Status::Converged;
            }
        }
    };

    let true_residual = a.residual(b, &x)?.norm2();
    Ok(SolveReport {
        solution: x,
        residual_history: history,
        iterations: k,
        status,
        true_residual,
        true_relative_residual: true_residual / b_norm,
        peak_basis_columns: 0,
    })
}
