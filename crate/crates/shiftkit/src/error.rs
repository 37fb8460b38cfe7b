use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix dimension must be at least 1")]
    ZeroDimension,

    #[error("matrix rows are not square: {rows} rows but row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("ragged input: row {row} has length {found}, expected {expected}")]
    RaggedInput {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("coefficient list must not be empty")]
    EmptyCoefficients,

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("entry index ({row}, {col}) out of bounds for dimension {n}")]
    IndexOutOfBounds { row: usize, col: usize, n: usize },

    #[error("filter does not commute with the shift matrix")]
    NotCommuting,

    #[error("side condition violated: {0}")]
    SideCondition(String),

    #[error("commutant basis element {basis_index} violates the expected structure in block pair ({l}, {m})")]
    StructureViolation {
        l: usize,
        m: usize,
        basis_index: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
