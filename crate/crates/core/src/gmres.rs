//! Full and restarted GMRES with left preconditioning.
//!
//! Every cycle starts from `v1 = r / |r|` with `r = M^-1 (b - A x)`, runs
//! Arnoldi on `M^-1 A` and feeds each new Hessenberg column to a
//! [`GivensLsq`], whose running residual is the history entry for that
//! iteration. A cycle ends on tolerance, on its inner budget, or on
//! breakdown; `x` is then updated by `V_m y_m`. Full GMRES is a single cycle
//! whose budget is the whole iteration budget. When the monitored estimate
//! claims convergence but the recomputed residual does not, a further
//! cycle is started from the current iterate.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::arnoldi::Arnoldi;
use crate::{
    CsrMatrix, DenseMatrix, DenseVector, Error, GivensLsq, ResidualEntry, Result, SolveReport, SolverConfig, Status,
    TriangularFactors,
};

pub(crate) fn check_system(a: &CsrMatrix, b: &DenseVector, x0: &DenseVector) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
    }
    b.check_len(a.n_rows())?;
    x0.check_len(a.n_rows())
}

/// Full GMRES from `x0`; the Krylov basis grows up to
/// `config.max_iterations + 1` columns. `config.restart` is ignored.
pub fn gmres_solve(a: &CsrMatrix, b: &DenseVector, x0: &DenseVector, config: &SolverConfig) -> Result<SolveReport> {
    config.validate()?;
    check_system(a, b, x0)?;
    let factors = TriangularFactors::build(a, config.preconditioner)?;
    run(a, b, x0, config, &factors, config.max_iterations)
}

/// Full GMRES with caller-supplied preconditioner factors
/// (`config.preconditioner` is ignored).
pub fn gmres_solve_with(
    a: &CsrMatrix,
    b: &DenseVector,
    x0: &DenseVector,
    config: &SolverConfig,
    factors: &TriangularFactors,
) -> Result<SolveReport> {
    config.validate()?;
    check_system(a, b, x0)?;
    factors_fit(a, factors)?;
    run(a, b, x0, config, factors, config.max_iterations)
}

/// GMRES(m1): cycles of at most `config.restart` steps, each restarted from
/// the previous cycle's iterate, until the tolerance or the total budget is
/// reached. History iterations are numbered globally.
pub fn gmres_restarted(a: &CsrMatrix, b: &DenseVector, x0: &DenseVector, config: &SolverConfig) -> Result<SolveReport> {
    config.validate()?;
    let restart = config.restart.ok_or(Error::InvalidConfig("restarted GMRES needs a restart length"))?;
    check_system(a, b, x0)?;
    let factors = TriangularFactors::build(a, config.preconditioner)?;
    run(a, b, x0, config, &factors, restart)
}

/// Restarted GMRES with caller-supplied factors.
pub fn gmres_restarted_with(
    a: &CsrMatrix,
    b: &DenseVector,
    x0: &DenseVector,
    config: &SolverConfig,
    factors: &TriangularFactors,
) -> Result<SolveReport> {
    config.validate()?;
    let restart = config.restart.ok_or(Error::InvalidConfig("restarted GMRES needs a restart length"))?;
    check_system(a, b, x0)?;
    factors_fit(a, factors)?;
    run(a, b, x0, config, factors, restart)
}

/// Solves `A X = B` column by column from `x0 = 0`. The preconditioner is
/// factorized once; `config.restart` selects restarted GMRES per column.
pub fn gmres_solve_multi(a: &CsrMatrix, rhs: &DenseMatrix, config: &SolverConfig) -> Result<DenseMatrix> {
    config.validate()?;
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
    }
    let n = a.n_rows();
    if rhs.n_rows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: rhs.n_rows() });
    }
    let factors = TriangularFactors::build(a, config.preconditioner)?;
    let cycle_len = config.restart.unwrap_or(config.max_iterations);
    let x0 = DenseVector::zeros(n);
    let mut out = DenseMatrix::zeros(n, rhs.n_cols());
    for column in 0..rhs.n_cols() {
        let report = run(a, &rhs.column(column), &x0, config, &factors, cycle_len)
            .map_err(|e| Error::Column { column, source: Box::new(e) })?;
        out.set_column(column, &report.solution)?;
    }
    Ok(out)
}

fn factors_fit(a: &CsrMatrix, factors: &TriangularFactors) -> Result<()> {
    if factors.dim() == a.n_rows() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a.n_rows(), found: factors.dim() })
    }
}

fn precondition(factors: &TriangularFactors, r: &DenseVector) -> Result<DenseVector> {
    factors.apply(r).map_err(|e| Error::Preconditioner(Box::new(e)))
}

fn run(
    a: &CsrMatrix,
    b: &DenseVector,
    x0: &DenseVector,
    config: &SolverConfig,
    factors: &TriangularFactors,
    cycle_len: usize,
) -> Result<SolveReport> {
    let n = a.n_rows();
    let b_norm = b.norm2();
    if b_norm == 0.0 {
        return Ok(SolveReport::zero_rhs(n));
    }
    let mut op = |v: &DenseVector| precondition(factors, &a.spmv(v)?);

    let mut x = x0.clone();
    let mut history: Vec<ResidualEntry> = Vec::new();
    let mut total = 0usize;
    let mut cycle = 0usize;
    let mut peak = 0usize;

    let status = 'outer: {
        let reference = match precondition(factors, b) {
            Ok(pb) => pb.norm2(),
            Err(Error::Preconditioner(_)) => break 'outer Status::PreconditionerFailure,
            Err(e) => return Err(e),
        };
        loop {
            let r = match precondition(factors, &a.residual(b, &x)?) {
                Ok(r) => r,
                Err(Error::Preconditioner(_)) => break 'outer Status::PreconditionerFailure,
                Err(e) => return Err(e),
            };
            let beta = r.norm2();
            let rel = beta / reference;
            match history.last_mut() {
                None => history.push(ResidualEntry {
                    iteration: 0,
                    cycle: 0,
                    absolute_residual: beta,
                    relative_residual: rel,
                }),
                Some(last) if rel <= config.tol && last.relative_residual > config.tol => {
                    last.absolute_residual = beta;
                    last.relative_residual = rel;
                }
                Some(_) => {}
            }
            if rel <= config.tol {
                break 'outer Status::Converged;
            }
            if total >= config.max_iterations {
                break 'outer Status::BudgetExhausted;
            }

            let budget = cycle_len.min(config.max_iterations - total);
            let mut v1 = r;
            v1.scale(1.0 / beta);
            let mut arnoldi = Arnoldi::new(v1)?;
            let mut lsq = GivensLsq::new(beta);
            let mut breakdown = false;
            let mut failed = false;
            peak = peak.max(arnoldi.columns().len());
            for _ in 0..budget {
                let step = match arnoldi.step(&mut op) {
                    Ok(step) => step,
                    Err(Error::Preconditioner(_)) => {
                        failed = true;
                        break;
                    }
                    Err(e) => return Err(e),
                };
                let res = lsq.push_column(&step.h_column)?;
                total += 1;
                peak = peak.max(arnoldi.columns().len());
                history.push(ResidualEntry {
                    iteration: total,
                    cycle,
                    absolute_residual: res,
                    relative_residual: res / reference,
                });
                if step.breakdown {
                    breakdown = true;
                    break;
                }
                if res / reference <= config.tol {
                    break;
                }
            }
            for (yi, v) in lsq.solve().iter().zip(arnoldi.columns()) {
                x.axpy(*yi, v);
            }
            cycle += 1;
            if failed {
                break 'outer Status::PreconditionerFailure;
            }
            if breakdown {
                break 'outer Status::BreakdownConverged;
            }
        }
    };

    let true_residual = a.residual(b, &x)?.norm2();
    Ok(SolveReport {
        solution: x,
        residual_history: history,
        iterations: total,
        status,
        true_residual,
        true_relative_residual: true_residual / b_norm,
        peak_basis_columns: peak,
    })
}
