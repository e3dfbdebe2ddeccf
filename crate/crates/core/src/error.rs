use thiserror::Error;

use crate::monomial::ExponentVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty generator set")]
    EmptyGenerators,

    #[error("ambient dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("power must be at least 1 (the unit ideal is not representable)")]
    ZeroPower,

    #[error("ideal is not m-primary: no pure power of variable {variable}")]
    NotMPrimary { variable: usize },

    #[error("ideal is not a parameter ideal (generated by pure powers only)")]
    NotParameter,

    #[error("containment failure: generator {witness} is not in the larger ideal")]
    NotContained { witness: ExponentVector },

    #[error("range too short: polynomial regime not reached (mismatch at index {index})")]
    RangeTooShort { index: usize },

    #[error("sample range too small: need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("lattice-point counts are not polynomial: mismatch at n = {n} (counted {counted}, interpolated {interpolated})")]
    EhrhartMismatch {
        n: u64,
        counted: u64,
        interpolated: String,
    },

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("invalid point basis: {0}")]
    InvalidPointBasis(String),

    #[error("{0}")]
    Invalid(String),

    #[error("theorem violation [{id}]: {detail}")]
    TheoremViolation { id: String, detail: String },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn violation(id: &str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            id: id.to_string(),
            detail: detail.into(),
        }
    }

    /// True for errors that signal an internal inconsistency rather than bad input.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            Error::TheoremViolation { .. } | Error::EhrhartMismatch { .. }
        )
    }
}
