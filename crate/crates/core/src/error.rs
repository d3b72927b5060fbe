use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("form is not {expected}: entry ({i}, {j}) violates it")]
    Symmetry { expected: &'static str, i: usize, j: usize },

    #[error("basis is linearly dependent (rank {rank} < {len})")]
    DependentBasis { rank: usize, len: usize },

    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("operator does not preserve the {0} subspace")]
    OperatorEscapes(&'static str),

    #[error("metric is degenerate")]
    DegenerateMetric,

    #[error("internal consistency failure in {what}: {witness}")]
    Consistency { what: &'static str, witness: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
