use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree error: {0}")]
    Degree(String),

    #[error("index {index} out of range 0..={max}")]
    Index { index: usize, max: usize },

    #[error("dimension mismatch: degree {0} vs degree {1}")]
    Dimension(usize, usize),

    #[error("domain error: {0}")]
    Domain(String),

    /// The polynomial has fewer real roots (counted with multiplicity) than its degree.
    #[error("not real-rooted: {real} of {degree} roots are real (deficit {})", degree - real)]
    NotRealRooted { degree: usize, real: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("insufficient samples: need at least 2, got {0}")]
    InsufficientSamples(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for malformed input (as opposed to a mathematical domain failure).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
