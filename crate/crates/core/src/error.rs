use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
///
/// Mathematical failures (an axiom that does not hold, a nonzero
/// `d³∘d¹`) are never errors; they are reported as data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parity {0}: degrees must be 0 or 1")]
    InvalidParity(u8),

    #[error("invalid delta {0}: must be 1 or -1")]
    InvalidDelta(i64),

    #[error("map is not homogeneous of degree {degree}: entry ({row}, {col}) is nonzero")]
    NotHomogeneous { degree: u8, row: usize, col: usize },

    #[error("subspace {0} is not contained in the ambient subspace")]
    NotContained(&'static str),

    #[error("unsupported cochain arity {0}")]
    UnsupportedArity(usize),

    #[error("representation check failed: {0}")]
    InvalidRepresentation(String),

    #[error("input is not a 3-cocycle: {0}")]
    NotCocycle(&'static str),

    #[error("operator is not a Nijenhuis operator: {0}")]
    NotNijenhuis(String),

    #[error("operator must be even, found degree {0}")]
    OddOperator(u8),

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("duplicate entry {0}")]
    DuplicateEntry(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
