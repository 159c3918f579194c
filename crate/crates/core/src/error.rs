use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a subspace")]
    NotSubspace,
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("not a cocycle: differential is nonzero on {witness}")]
    NotCocycle { witness: String },
    #[error("not a Maurer-Cartan class: its square is nonzero in cohomology")]
    NotMaurerCartan,
    #[error("not an A_{0} structure: the arity {1} equation fails")]
    NotAStructure(usize, usize),
    #[error("inconclusive window: {0}")]
    InconclusiveWindow(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("search budget exhausted: {0}")]
    SearchBudget(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
