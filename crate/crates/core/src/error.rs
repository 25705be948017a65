//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::linalg::QVector;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Inverting the zero quaternion or dividing by a zero norm.
    #[error("zero quaternion has no inverse")]
    ZeroDivisor,

    /// Dimension or shape mismatch between operands.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Matrix singular within the rank tolerance. Carries the condition
    /// estimate (largest over smallest singular value of the embedding).
    #[error("matrix singular within tolerance (condition estimate {cond:.3e})")]
    Singular { cond: f64 },

    #[error("matrix not self-adjoint: deviation {dev:.3e} exceeds {tol:.3e}")]
    NotSelfAdjoint { dev: f64, tol: f64 },

    #[error("matrix not positive: minimum eigenvalue {min_eig:.3e} below -{tol:.3e}")]
    NotPositive { min_eig: f64, tol: f64 },

    #[error("matrix not unitary: deviation {dev:.3e} exceeds {tol:.3e}")]
    NotUnitary { dev: f64, tol: f64 },

    /// Input to the inverse complex embedding does not carry the required
    /// block structure.
    #[error("matrix outside the complex-embedding image: deviation {dev:.3e} exceeds {tol:.3e}")]
    Structure { dev: f64, tol: f64 },

    #[error("index {index} out of range for length {len}")]
    Index { index: usize, len: usize },

    /// A per-point vector family failed the linear-independence test.
    #[error("dependent vector family at point {point}: relative Gram eigenvalue {ratio:.3e}")]
    DependentFamily { point: usize, ratio: f64 },

    #[error("not a frame: {0}")]
    NotAFrame(String),

    /// A random unit vector violated the frame inequality; carries the witness.
    #[error("frame inequality violated: s(phi) = {value:.17e} outside [{lo:.17e}, {hi:.17e}]")]
    BoundViolation {
        value: f64,
        lo: f64,
        hi: f64,
        witness: QVector,
    },

    /// A sample field is not in the range of the analysis operator.
    #[error("sample field outside the analysis range: relative residual {residual:.3e}")]
    OffRange { residual: f64 },

    #[error("frames are not gauge related: {0}")]
    NotGaugeRelated(String),

    /// The gauge change-of-basis solution failed its unitarity check.
    #[error("inconsistent gauge solution: {0}")]
    Inconsistent(String),

    #[error("generation failed after {attempts} attempts: {what}")]
    Generation { what: String, attempts: usize },

    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A verified postcondition did not hold at the stated tolerance.
    #[error("invariant violated: {what} (residual {residual:.3e}, tolerance {tol:.3e})")]
    Invariant {
        what: String,
        residual: f64,
        tol: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
