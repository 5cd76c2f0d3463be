//! The `solve`, `generate` and `compare` commands.
//!
//! Commands return an [`Outcome`] (or [`CliError`]) instead of printing, so
//! the binary and the tests share one code path. Exit codes: 0 converged,
//! 2 iteration budget exhausted, 1 everything else.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::thread;

use krylov_core::{
    cg_solve, gmres_restarted, gmres_solve, CsrMatrix, DenseVector, Preconditioner, SolveReport, SolverConfig, Status,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::generate::{self, GenerateError, MatrixKind};
use crate::history::{self, HistoryError};
use crate::mtx::{self, MtxError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    #[value(name = "gmres")]
    Gmres,
    #[value(name = "gmres_restarted")]
    GmresRestarted,
    #[value(name = "cg")]
    Cg,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Gmres => "gmres",
            Self::GmresRestarted => "gmres_restarted",
            Self::Cg => "cg",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: MtxError },
    #[error("history {}: {source}", path.display())]
    History { path: PathBuf, source: HistoryError },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Solve(#[from] krylov_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_ERROR
    }
}

/// Options shared by `solve` and each `compare` variant.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub matrix: PathBuf,
    /// Right-hand side; all ones when absent (or seeded uniform `[-1, 1)`
    /// values when `seed` is set).
    pub rhs: Option<PathBuf>,
    pub method: Method,
    pub restart: Option<usize>,
    pub precond: Preconditioner,
    pub tol: f64,
    /// Iteration budget; `10 n` when absent.
    pub max_iterations: Option<usize>,
    pub history: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(matrix: impl Into<PathBuf>, method: Method) -> Self {
        Self {
            matrix: matrix.into(),
            rhs: None,
            method,
            restart: None,
            precond: Preconditioner::None,
            tol: 1e-7,
            max_iterations: None,
            history: None,
            out: None,
            seed: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        match (self.method, self.restart) {
            (Method::GmresRestarted, None) => {
                return Err(CliError::Usage("--restart is required with --method gmres_restarted".into()))
            }
            (Method::Gmres | Method::Cg, Some(_)) => {
                return Err(CliError::Usage(format!("--restart only applies to gmres_restarted, not {}", self.method)))
            }
            _ => {}
        }
        if self.method == Method::Cg && self.precond == Preconditioner::Ilu0 {
            return Err(CliError::Usage("cg needs a symmetric preconditioner: use none or ic0".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.max_iterations == Some(0) || self.restart == Some(0) {
            return Err(CliError::Usage("--maxit and --restart must be at least 1".into()));
        }
        for path in std::iter::once(&self.matrix).chain(&self.rhs) {
            fs::metadata(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
        }
        Ok(())
    }

    fn solver_config(&self, n: usize) -> SolverConfig {
        let mut c =
            SolverConfig::new(self.tol, self.max_iterations.unwrap_or(10 * n).max(1)).with_preconditioner(self.precond);
        c.restart = self.restart;
        c
    }
}

pub fn load_matrix(path: &Path) -> Result<CsrMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    mtx::parse_matrix_market(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

pub fn load_vector(path: &Path) -> Result<DenseVector, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    mtx::parse_vector(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

/// Loads (or synthesizes) the right-hand side for `a`.
pub fn load_rhs(config: &RunConfig, a: &CsrMatrix) -> Result<DenseVector, CliError> {
    let n = a.n_rows();
    let b = match (&config.rhs, config.seed) {
        (Some(path), _) => load_vector(path)?,
        (None, Some(seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            DenseVector::from_vec((0..n).map(|_| rng.random_range(-1.0..1.0)).collect())?
        }
        (None, None) => DenseVector::ones(n),
    };
    if b.len() != n {
        return Err(CliError::Usage(format!("right-hand side has {} entries, matrix has {n} rows", b.len())));
    }
    Ok(b)
}

/// Runs the configured method on an already loaded system.
pub fn solve_system(config: &RunConfig, a: &CsrMatrix, b: &DenseVector) -> Result<SolveReport, CliError> {
    let solver = config.solver_config(a.n_rows());
    let x0 = DenseVector::zeros(a.n_cols());
    let report = match config.method {
        Method::Gmres => gmres_solve(a, b, &x0, &solver)?,
        Method::GmresRestarted => gmres_restarted(a, b, &x0, &solver)?,
        Method::Cg => cg_solve(a, b, &x0, &solver)?,
    };
    Ok(report)
}

pub fn status_exit_code(status: Status) -> i32 {
    match status {
        Status::Converged | Status::BreakdownConverged => EXIT_OK,
        Status::BudgetExhausted => EXIT_BUDGET,
        Status::PreconditionerFailure => EXIT_ERROR,
    }
}

/// Text for stdout, text for stderr and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// `method=<m> precond=<p> iters=<k> relres=<r> status=<s>`, where `relres`
/// is the true relative residual of the returned solution.
pub fn summary_line(config: &RunConfig, report: &SolveReport) -> String {
    format!(
        "method={} precond={} iters={} relres={:.6e} status={}",
        config.method, config.precond, report.iterations, report.true_relative_residual, report.status
    )
}

pub fn cmd_solve(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let a = load_matrix(&config.matrix)?;
    let b = load_rhs(config, &a)?;
    let report = solve_system(config, &a, &b)?;

    if let Some(path) = &config.history {
        history::write_history(path, &report.residual_history)
            .map_err(|source| CliError::History { path: path.clone(), source })?;
    }
    let solution = mtx::write_vector(report.solution.as_slice());
    let stdout = match &config.out {
        Some(path) => {
            crate::write_atomic(path, solution.as_bytes())
                .map_err(|source| CliError::Write { path: path.clone(), source })?;
            String::new()
        }
        None => solution,
    };
    Ok(Outcome { stdout, stderr: summary_line(config, &report) + "\n", exit_code: status_exit_code(report.status) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateConfig {
    pub kind: MatrixKind,
    pub n: usize,
    pub seed: u64,
    /// Mirror off-diagonal entries (`diag_dominant` only).
    pub symmetric: bool,
    /// Matrix Market output; stdout when absent.
    pub out: Option<PathBuf>,
}

pub fn cmd_generate(config: &GenerateConfig) -> Result<Outcome, CliError> {
    if config.symmetric && config.kind != MatrixKind::DiagDominant {
        return Err(CliError::Usage("--symmetric only applies to diag_dominant".into()));
    }
    let a = generate::generate(config.kind, config.n, config.seed, config.symmetric)?;
    let text = mtx::write_matrix_market(&a);
    let stdout = match &config.out {
        Some(path) => {
            crate::write_atomic(path, text.as_bytes())
                .map_err(|source| CliError::Write { path: path.clone(), source })?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome { stdout, stderr: String::new(), exit_code: EXIT_OK })
}

/// A `method[+precond]` pair such as `gmres+ilu0` or `cg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Variant {
    pub method: Method,
    pub precond: Preconditioner,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.method, self.precond)
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (m, p) = s.split_once('+').unwrap_or((s, "none"));
        let method = <Method as clap::ValueEnum>::from_str(m, false)
            .map_err(|_| format!("unknown method `{m}` in variant `{s}`"))?;
        let precond = p.parse().map_err(|_| format!("unknown preconditioner `{p}` in variant `{s}`"))?;
        Ok(Self { method, precond })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareConfig {
    /// Shared options; `method`, `precond` and `out` are ignored and
    /// `history` names a directory receiving `<variant>.csv` per variant.
    pub base: RunConfig,
    pub variants: Vec<Variant>,
}

/// One row of the comparison table.
#[derive(Debug)]
pub struct VariantResult {
    pub variant: Variant,
    pub result: Result<SolveReport, CliError>,
}

fn variant_config(base: &RunConfig, v: Variant) -> RunConfig {
    RunConfig {
        method: v.method,
        precond: v.precond,
        restart: if v.method == Method::GmresRestarted { base.restart } else { None },
        history: None,
        out: None,
        ..base.clone()
    }
}

/// Runs every variant concurrently on the shared system. Results keep the
/// input order.
pub fn run_variants(config: &CompareConfig) -> Result<Vec<VariantResult>, CliError> {
    if config.variants.is_empty() {
        return Err(CliError::Usage("compare needs at least one --variant".into()));
    }
    RunConfig { method: Method::Gmres, restart: None, precond: Preconditioner::None, ..config.base.clone() }
        .validate()?;
    let a = load_matrix(&config.base.matrix)?;
    let b = load_rhs(&config.base, &a)?;
    let (a, b) = (&a, &b);
    let results = thread::scope(|s| {
        let handles: Vec<_> = config
            .variants
            .iter()
            .map(|&variant| {
                let rc = variant_config(&config.base, variant);
                s.spawn(move || VariantResult { variant, result: rc.validate().and_then(|_| solve_system(&rc, a, b)) })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect::<Vec<_>>()
    });
    Ok(results)
}

pub fn history_file_name(v: Variant) -> String {
    format!("{v}.csv")
}

pub fn cmd_compare(config: &CompareConfig) -> Result<Outcome, CliError> {
    let results = run_variants(config)?;
    if let Some(dir) = &config.base.history {
        fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.clone(), source })?;
        for r in &results {
            if let Ok(report) = &r.result {
                let path = dir.join(history_file_name(r.variant));
                history::write_history(&path, &report.residual_history)
                    .map_err(|source| CliError::History { path, source })?;
            }
        }
    }

    let mut table = csv::Writer::from_writer(Vec::new());
    let mut stderr = String::new();
    let write_err = |e: csv::Error| CliError::Usage(format!("formatting summary: {e}"));
    table.write_record(["variant", "iters", "relres", "status"]).map_err(write_err)?;
    for r in &results {
        let name = r.variant.to_string();
        match &r.result {
            Ok(report) => {
                let iters = report.iterations.to_string();
                let relres = history::format_real(report.true_relative_residual);
                table.write_record([name.as_str(), &iters, &relres, report.status.as_str()]).map_err(write_err)?;
            }
            Err(e) => {
                table.write_record([name.as_str(), "", "", "error"]).map_err(write_err)?;
                stderr.push_str(&format!("{name}: {e}\n"));
            }
        }
    }
    let stdout = String::from_utf8(table.into_inner().expect("in-memory writer")).expect("ascii table");

    let statuses: Vec<Status> = results.iter().filter_map(|r| r.result.as_ref().ok().map(|rep| rep.status)).collect();
    let exit_code = if statuses.iter().any(|s| s.is_success()) {
        EXIT_OK
    } else if statuses.contains(&Status::BudgetExhausted) {
        EXIT_BUDGET
    } else {
        EXIT_ERROR
    };
    Ok(Outcome { stdout, stderr, exit_code })
}
