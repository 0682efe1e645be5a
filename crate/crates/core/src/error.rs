use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mesh parameter: {0}")]
    InvalidMeshParameter(String),
    #[error("degenerate cell {cell}: signed area {area:e}")]
    DegenerateCell { cell: usize, area: f64 },
    #[error("cell index {0} out of range")]
    CellOutOfRange(usize),
    #[error("unsupported quadrature degree {0} (supported: 1..={max})", max = crate::elements::MAX_QUADRATURE_DEGREE)]
    UnsupportedQuadratureDegree(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero pivot in ILU(0) at row {row} (|pivot| = {pivot:e})")]
    ZeroPivot { row: usize, pivot: f64 },
    #[error("linear solver failed: {0}")]
    LinearSolver(String),
    #[error("missing boundary value for facet {0}")]
    MissingBoundaryValue(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
