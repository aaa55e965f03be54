//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live at different `(N, D)` windows, or a scalar
    /// precondition (nonzero, coprime, ...) is violated.
    #[error("parameter error: {0}")]
    Param(String),

    /// Inversion of an element whose degree-zero part is not a unit.
    #[error("non-invertible element: {0}")]
    NonInvertible(String),

    /// A coefficient was requested beyond the truncation window; its value
    /// is unknowable at this truncation.
    #[error("out of truncation window: {0}")]
    OutOfWindow(String),

    /// An element of the crossed-product algebra is not in the W subalgebra.
    #[error("element is not in W: {0}")]
    NotInW(String),

    /// A group-algebra element is not in `K ⊕ V^B (X_1 - 1)`.
    #[error("element is not in W^B: {0}")]
    NotInWB(String),

    /// The degree-by-degree affine system of the solver is inconsistent.
    /// Not expected for consistent double shuffle data; surfaced loudly.
    #[error("solver obstruction at degree {degree}")]
    SolverObstruction { degree: usize },

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
