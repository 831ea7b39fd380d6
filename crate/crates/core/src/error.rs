use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// tell which contract was violated.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {dim}: need at least {min}")]
    InvalidDimension { dim: usize, min: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("frequency must be positive and finite, got {0}")]
    NonPositiveOmega(f64),

    #[error("pairing is only defined bra-against-ket (got {bra:?} against {ket:?})")]
    SetMismatch {
        bra: crate::Family,
        ket: crate::Family,
    },

    #[error("polynomial degree {degree} exceeds exactness bound {max} of a {nodes}-node rule")]
    Precision {
        degree: usize,
        max: usize,
        nodes: usize,
    },

    #[error("truncation budget exceeded: tail {tail:e} > {budget:e} (alpha modulus {alpha_abs}, dim {dim})")]
    TruncationBudget {
        tail: f64,
        budget: f64,
        alpha_abs: f64,
        dim: usize,
    },

    #[error("growth exponent {exponent} exceeds overflow guard {limit}")]
    Overflow { exponent: f64, limit: f64 },

    #[error("integration error {error:e} exceeds tolerance {tol:e}")]
    Accuracy { error: f64, tol: f64 },

    #[error("wave function leaked to the grid boundary at step {step}: |psi| = {amplitude:e}")]
    BoundaryLeak { step: usize, amplitude: f64 },

    #[error("norm drift {drift:e} at step {step} exceeds {tol:e}")]
    NormDrift { step: usize, drift: f64, tol: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
