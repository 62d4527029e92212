//! Engine-wide error type.

use thiserror::Error;

/// Errors surfaced by the symbolic and numeric layers.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A generator identity does not belong to the algebra at hand.
    #[error("unknown generator {0}")]
    UnknownGenerator(String),

    /// A substitution was requested without an image for a generator.
    #[error("no image provided for generator {0}")]
    MissingImage(String),

    /// A scalar evaluation was requested without a value for a generator.
    #[error("no value provided for generator {0}")]
    MissingValue(String),

    /// A relation cannot be oriented into a rewrite rule (its leading word is
    /// the unit, i.e. the relation forces the algebra to collapse).
    #[error("relation cannot be oriented into a rule: {0}")]
    UnorientableRelation(String),

    /// A matrix parameter has the wrong shape for the requested construction.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix parameter that must be positive definite is not.
    #[error("matrix is not positive definite: {0}")]
    NotPositive(String),

    /// A tensor element's component shape disagrees with its space.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// An enumeration size cap was exceeded.
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    /// A matrix expected to be unitary is not (within tolerance).
    #[error("matrix is not unitary: {0}")]
    NotUnitary(String),

    /// Malformed input to the DSL or a file format.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
