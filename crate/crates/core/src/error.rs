use thiserror::Error;

/// Errors produced by the exact kernel and the combinatorial machinery.
///
/// `Genericity` covers every violation of the genericity assumptions an
/// arrangement must satisfy (tangent through three vertices, persistent
/// support ties, non-transversal touchings). These are rejections of the
/// input, never silently repaired.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("genericity violation: {0}")]
    Genericity(String),

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("inconsistent combinatorial data: {0}")]
    Inconsistent(String),

    #[error("triple ({0}, {1}, {2}) is not orientable")]
    NonOrientable(String, String, String),

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("realization failed after {retries} retries: {detail}")]
    RealizationFailed { retries: usize, detail: String },

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
