use alloc::boxed::Box;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the numerical core.
///
/// Row and column indices are 0-based.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("NaN value at position {index}")]
    NotANumber { index: usize },

    #[error("invalid sparse structure: {0}")]
    InvalidStructure(&'static str),

    #[error("matrix is singular to working precision (pivot column {column})")]
    Singular { column: usize },

    #[error("matrix not symmetric: entries ({row}, {col}) and ({col}, {row}) differ")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not positive definite (eigenvalue {eigenvalue:e})")]
    NotPositiveDefinite { eigenvalue: f64 },

    #[error("dense oracle limited to n <= {limit}, got n = {n}")]
    OracleTooLarge { n: usize, limit: usize },

    #[error("starting vector must have unit 2-norm, found {norm}")]
    NonUnitStart { norm: f64 },

    #[error("rank-deficient Hessenberg matrix: column {column} vanished")]
    RankDeficient { column: usize },

    #[error("indefinite matrix: d^T A d = {curvature:e} at iteration {iteration}")]
    Indefinite { iteration: usize, curvature: f64 },

    #[error("structurally missing diagonal at row {row}")]
    MissingDiagonal { row: usize },

    #[error("zero pivot at row {row} ({value:e})")]
    ZeroPivot { row: usize, value: f64 },

    #[error("non-positive pivot at row {row} ({value:e})")]
    NonPositivePivot { row: usize, value: f64 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("preconditioner failure: {0}")]
    Preconditioner(Box<Error>),

    #[error("column {column}: {source}")]
    Column { column: usize, source: Box<Error> },
}
