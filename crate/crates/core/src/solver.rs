//! Configuration and result types shared by the GMRES and CG drivers.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{DenseVector, Error, Result};

/// Preconditioner selection. Preconditioning is always applied on the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Preconditioner {
    #[default]
    None,
    Ilu0,
    Ic0,
}

impl Preconditioner {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Ilu0 => "ilu0",
            Self::Ic0 => "ic0",
        }
    }
}

impl fmt::Display for Preconditioner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Preconditioner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "ilu0" => Ok(Self::Ilu0),
            "ic0" => Ok(Self::Ic0),
            _ => Err(Error::InvalidConfig("preconditioner must be none, ilu0 or ic0")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative residual tolerance.
    pub tol: f64,
    /// Total iteration budget (Arnoldi steps for GMRES).
    pub max_iterations: usize,
    /// Restart length for restarted GMRES.
    pub restart: Option<usize>,
    pub preconditioner: Preconditioner,
}

impl SolverConfig {
    pub fn new(tol: f64, max_iterations: usize) -> Self {
        Self { tol, max_iterations, restart: None, preconditioner: Preconditioner::None }
    }

    pub fn with_restart(mut self, restart: usize) -> Self {
        self.restart = Some(restart);
        self
    }

    pub fn with_preconditioner(mut self, preconditioner: Preconditioner) -> Self {
        self.preconditioner = preconditioner;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1"));
        }
        if self.restart == Some(0) {
            return Err(Error::InvalidConfig("restart must be at least 1"));
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::new(1e-7, 1000)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Converged,
    BudgetExhausted,
    /// The Krylov subspace became invariant; the iterate is exact up to
    /// rounding.
    BreakdownConverged,
    /// Applying the preconditioner failed after a successful factorization.
    PreconditionerFailure,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Converged => "converged",
            Self::BudgetExhausted => "budget_exhausted",
            Self::BreakdownConverged => "breakdown_converged",
            Self::PreconditionerFailure => "preconditioner_failure",
        }
    }

    pub fn is_success(self) -> bool {
        matches!(self, Self::Converged | Self::BreakdownConverged)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One point of a convergence history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualEntry {
    pub iteration: usize,
    /// Restart cycle, 0 for unrestarted runs.
    pub cycle: usize,
    pub absolute_residual: f64,
    pub relative_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: DenseVector,
    /// Initial entry at iteration 0 followed by one entry per iteration.
    /// With a preconditioner, GMRES records the preconditioned residual
    /// `|M^-1 (b - A x)|` relative to `|M^-1 b|`.
    pub residual_history: Vec<ResidualEntry>,
    pub iterations: usize,
    pub status: Status,
    /// `|b - A x|_2` recomputed from the returned solution.
    pub true_residual: f64,
    /// `true_residual / |b|_2`, or 0 when `b = 0`.
    pub true_relative_residual: f64,
    /// Largest number of Krylov basis vectors held at once (0 for CG).
    pub peak_basis_columns: usize,
}

impl SolveReport {
    pub fn final_relative_residual(&self) -> f64 {
        self.residual_history.last().map_or(0.0, |e| e.relative_residual)
    }

    /// Report for `b = 0`: `x = 0`, converged at iteration 0.
    pub(crate) fn zero_rhs(n: usize) -> Self {
        Self {
            solution: DenseVector::zeros(n),
            residual_history: alloc::vec![ResidualEntry {
                iteration: 0,
                cycle: 0,
                absolute_residual: 0.0,
                relative_residual: 0.0,
            }],
            iterations: 0,
            status: Status::Converged,
            true_residual: 0.0,
            true_relative_residual: 0.0,
            peak_basis_columns: 0,
        }
    }
}
