use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree k={k} is out of range for n={n}")]
    BadDegree { n: usize, k: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("wedge degree {0} exceeds ambient dimension {1}")]
    DegreeOverflow(usize, usize),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),

    #[error("linear system is inconsistent")]
    NoSolution,

    #[error("linear system has no unique solution (rank {rank} < {cols} unknowns)")]
    NotUnique { rank: usize, cols: usize },

    #[error("characterization system for n={n}, k={k} has a non-trivial solution space")]
    NonUnique { n: usize, k: usize },

    #[error("characterization system for n={n}, k={k} is inconsistent")]
    Inconsistent { n: usize, k: usize },

    #[error("closed-form and linear-system solutions disagree for n={n}, k={k}")]
    PathDisagreement { n: usize, k: usize },

    #[error("elimination replay left unknowns alive: {0:?}")]
    TraceIncomplete(Vec<String>),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that can only arise from a broken implementation, never from bad input.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            Error::NonUnique { .. }
                | Error::Inconsistent { .. }
                | Error::PathDisagreement { .. }
                | Error::TraceIncomplete(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
