use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("index {index} out of range for {context} of size {len}")]
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        len: usize,
    },

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("invalid cost matrix: {0}")]
    InvalidCost(String),

    #[error("invalid evidence model: {0}")]
    InvalidModel(String),

    #[error("invalid likelihood-ratio distribution: {0}")]
    InvalidLrDistribution(String),

    #[error("evidence outcome {outcome} has probability zero under the prior")]
    ImpossibleEvidence { outcome: usize },

    #[error("likelihood ratio undefined: outcome {outcome} has probability zero under both hypotheses")]
    UndefinedLr { outcome: usize },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("score {score} is impossible under both hypotheses")]
    ImpossibleScore { score: usize },

    #[error("frequency table line {line}: {message}")]
    TableParse { line: u64, message: String },

    #[error("invalid frequency table: {0}")]
    InvalidTable(String),

    #[error("invalid genotype profile: {0}")]
    InvalidProfile(String),
}
