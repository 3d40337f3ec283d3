//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrnError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {dim} (this operation handles up to {max})")]
    UnsupportedDimension { dim: usize, max: usize },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("systems are defined over different species lists")]
    SpeciesMismatch,

    #[error("too many species for subset enumeration: {count} > {max}")]
    TooManySpecies { count: usize, max: usize },

    #[error("vertex {vertex:?} leaves the nonnegative orthant")]
    OrthantViolation { vertex: Vec<i64> },

    #[error(
        "field is not mass-action realizable: monomial with exponent {exponent:?} \
         has a negative net coefficient for species index {species}, whose exponent is zero"
    )]
    MalformedField { exponent: Vec<u32>, species: usize },

    #[error("invalid scalar polynomial: {0}")]
    InvalidScalarPolynomial(String),

    #[error("candidate complex set too large: {count} > {max}")]
    CandidateSetTooLarge { count: usize, max: usize },

    #[error("candidate set is missing the support exponent {exponent:?}")]
    MissingSupportExponent { exponent: Vec<u32> },

    #[error("invalid transformation: {0}")]
    InvalidTransform(String),

    #[error("direction arrangement too large: {normals} normal lines (cap {max})")]
    ArrangementTooLarge { normals: usize, max: usize },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },

    #[error("singular jacobian during newton iteration")]
    SingularJacobian,

    #[error("newton iteration did not converge within {max_iter} iterations")]
    NoConvergence { max_iter: usize },

    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, CrnError>;
