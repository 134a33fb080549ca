//! Error taxonomy shared across the engine.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("signature mismatch: {0}")]
    Signature(String),

    #[error("branch cut input: {0}")]
    BranchCut(String),

    #[error("singular point: {0}")]
    Singular(String),

    #[error("non-integrable degeneration: {0}")]
    Integrability(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
