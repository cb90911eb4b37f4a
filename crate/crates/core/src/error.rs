use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// [`Error::name`] gives a stable identifier for machine-readable error
/// records; the `Display` impl is for humans.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts must be non-increasing, got {0:?}")]
    NotNonIncreasing(Vec<usize>),
    #[error("parts must be positive, got {0:?}")]
    NonPositivePart(Vec<i64>),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("cell ({row}, {col}) is not in shape {shape:?}")]
    CellOutsideShape { row: usize, col: usize, shape: Vec<usize> },
    #[error("n! is not divisible by the hook product for shape {0:?}")]
    InternalInexactDivision(Vec<usize>),
    #[error("grid does not match shape {shape:?}: {detail}")]
    ShapeMismatch { shape: Vec<usize>, detail: String },
    #[error("entries must be exactly 1..={n}, each once")]
    DuplicateOrMissingEntry { n: usize },
    #[error("row {row} is not strictly increasing")]
    RowNotIncreasing { row: usize },
    #[error("column {col} is not strictly increasing")]
    ColumnNotIncreasing { col: usize },
    #[error("descent function has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unknown builtin descent function {0:?}")]
    UnknownBuiltin(String),
    #[error("geometric ratio must be positive, got {0}")]
    NonPositiveRatio(String),
    #[error("{what} would produce {count} items, above the guard of {guard}")]
    GuardExceeded { what: &'static str, count: String, guard: u64 },
    #[error("descent function must be strictly positive (f({index}) = {value})")]
    NonPositiveF { index: usize, value: String },
}

impl Error {
    /// Variant name, used as the `error` field of CLI error records.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotNonIncreasing(_) => "NotNonIncreasing",
            Error::NonPositivePart(_) => "NonPositivePart",
            Error::Parse { .. } => "ParseError",
            Error::CellOutsideShape { .. } => "CellOutsideShape",
            Error::InternalInexactDivision(_) => "InternalInexactDivision",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::DuplicateOrMissingEntry { .. } => "DuplicateOrMissingEntry",
            Error::RowNotIncreasing { .. } => "RowNotIncreasing",
            Error::ColumnNotIncreasing { .. } => "ColumnNotIncreasing",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::UnknownBuiltin(_) => "UnknownBuiltin",
            Error::NonPositiveRatio(_) => "NonPositiveRatio",
            Error::GuardExceeded { .. } => "GuardExceeded",
            Error::NonPositiveF { .. } => "NonPositiveF",
        }
    }

    pub(crate) fn parse(what: &'static str, input: impl Into<String>) -> Self {
        Error::Parse { what, input: input.into() }
    }
}
