use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("homomorphism is not well defined: {0}")]
    IllDefined(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The descending image chain at `level` does not stabilize inside the window.
    #[error("image chain at level {level} does not stabilize within window {window}")]
    NotStabilizedInWindow { level: usize, window: usize },
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
