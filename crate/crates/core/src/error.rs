use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a packed word: {0:?}")]
    NotPacked(Vec<u32>),
    #[error("invalid set composition: {0}")]
    InvalidSetComposition(String),
    #[error("invalid composition: parts must be positive, got {0:?}")]
    InvalidComposition(Vec<u32>),
    #[error("word too long: {0} letters (maximum 255)")]
    WordTooLong(usize),
    #[error("resource limit: {what} {requested} exceeds cap {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("degree {degree} exceeds series cutoff {cutoff}")]
    CutoffExceeded { degree: usize, cutoff: usize },
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid algebra map: {0}")]
    InvalidMap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("malformed json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
