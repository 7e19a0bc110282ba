use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("tower has no stages")]
    EmptyTower,
    #[error("stage {stage}: fiber dimension must be positive, got {value}")]
    NonPositiveFiberDim { stage: usize, value: String },
    #[error("stage {stage}: expected {expected} summand rows, found {found}")]
    RowCount {
        stage: usize,
        expected: usize,
        found: usize,
    },
    #[error("stage {stage}, row {row}: expected {expected} columns, found {found}")]
    ColumnCount {
        stage: usize,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("summand list is empty")]
    EmptySummands,
    #[error("summand rows have inconsistent lengths")]
    RaggedRows,

    #[error("bundle: {0}")]
    BundleShape(String),
    #[error("bundle is not trivial")]
    BundleNotTrivial,
    #[error("bundle is in the stable range ({rows} rows >= base dimension {base})")]
    StableRange { rows: usize, base: usize },

    #[error("class belongs to a different ring")]
    RingMismatch,
    #[error("ring map has not been verified")]
    UnverifiedMap,
    #[error("operation requires coefficients in {expected}, ring has {found}")]
    WrongDomain { expected: String, found: String },
    #[error("invalid coefficient domain: {0}")]
    InvalidDomain(String),
    #[error("invalid scalar literal {0:?}")]
    InvalidScalar(String),

    #[error("map does not respect the stage filtration at stage {stage}")]
    NotFiltered { stage: usize },
    #[error("expected a tower of height {expected}, got {found}")]
    HeightMismatch { expected: usize, found: usize },
    #[error("stage {stage} has fiber dimension {dim}; a Bott tower needs 1")]
    NotBott { stage: usize, dim: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
