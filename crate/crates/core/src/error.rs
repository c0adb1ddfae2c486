use thiserror::Error;

/// Errors produced by parsing, ranking, simulation and validation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("invalid weights: {0}")]
    Weights(String),

    #[error("decision matrix built from an empty queue")]
    EmptyQueue,

    #[error("ranking failed: {0}")]
    Ranking(String),

    #[error("invalid rule: {0}")]
    Rule(String),

    #[error("simulation error: {0}")]
    Simulation(String),

    #[error("trace error: {0}")]
    Trace(String),

    #[error("statistics error: {0}")]
    Stats(String),
}

pub type Result<T> = std::result::Result<T, Error>;
