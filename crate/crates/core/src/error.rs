use thiserror::Error;

use crate::stream::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma must be at least {min}, got {got}")]
    InvalidGamma { got: u64, min: u64 },

    #[error("gamma mismatch: {left} vs {right}")]
    GammaMismatch { left: u64, right: u64 },

    #[error("γ-edge endpoints must differ")]
    SelfPair,

    #[error("k must be at least 1")]
    InvalidK,

    #[error("delta must satisfy 1 < delta < |T| = {span}, got {delta}")]
    InvalidDelta { delta: u64, span: u64 },

    #[error("invalid link stream: {0}")]
    InvalidStream(ValidationReport),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("assignment does not satisfy formula")]
    UnsatisfyingAssignment,

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub(crate) fn check_gamma(gamma: u64, min: u64) -> Result<()> {
    if gamma < min {
        Err(Error::InvalidGamma { got: gamma, min })
    } else {
        Ok(())
    }
}
