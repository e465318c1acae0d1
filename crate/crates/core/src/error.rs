//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid element: index {index} out of range for group of order {order}")]
    InvalidElement { index: usize, order: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid generators: {0}")]
    InvalidGenerators(String),

    #[error("context mismatch: operands are bound to different (group, weight) contexts")]
    ContextMismatch,

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("degenerate representation: {0}")]
    DegenerateRepresentation(String),

    #[error("ill-conditioned reconstruction: condition number {cond:.3e} exceeds {limit:.3e}")]
    IllConditioned { cond: f64, limit: f64 },

    #[error("reconstructed operator is not unitary: residual {residual:.3e} exceeds {tol:.3e}")]
    NotUnitary { residual: f64, tol: f64 },
}
