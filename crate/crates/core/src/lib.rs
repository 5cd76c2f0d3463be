//! Krylov subspace solvers for sparse linear systems.
//!
//! The crate is `no_std` (it needs `alloc`) and carries only numerics:
//! compressed sparse row storage, the Arnoldi process, full and restarted
//! GMRES with progressive Givens least squares, conjugate gradients, and
//! zero-fill incomplete factorizations (ILU(0), IC(0)) used as left
//! preconditioners. Small dense oracles (Gaussian elimination, Jacobi
//! eigenvalues) are shipped alongside so callers can report true errors.
//!
//! File formats, generators and the command-line harness live in the
//! companion `krylov` crate.

#![cfg_attr(all(not(feature = "std"), not(test)), no_std)]

extern crate alloc;

pub mod arnoldi;
pub mod cg;
pub mod csr;
pub mod dense;
mod error;
pub mod gmres;
pub mod lsq;
pub mod oracle;
pub mod precond;
pub mod solver;
pub mod vector;

pub use arnoldi::{arnoldi_expand, arnoldi_relation_residual, Arnoldi, KrylovBasis};
pub use cg::{cg_solve, cg_solve_observed, cg_solve_with, CgState};
pub use csr::CsrMatrix;
pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use gmres::{gmres_restarted, gmres_solve, gmres_solve_multi, gmres_solve_with};
pub use lsq::{hessenberg_lsq, GivensLsq};
pub use oracle::{condition_number_spd_oracle, dense_solve_oracle, ORACLE_MAX_DIM};
pub use precond::{ic0, ilu0, precond_apply, FactorKind, TriangularFactors};
pub use solver::{Preconditioner, ResidualEntry, SolveReport, SolverConfig, Status};
pub use vector::DenseVector;
