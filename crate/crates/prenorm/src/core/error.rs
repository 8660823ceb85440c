use thiserror::Error;

/// Errors surfaced by validators, limit constructions, and quotients.
///
/// `BackendBug` is reserved for internal cross-checks that two independent
/// routes to the same construction disagreed; it should never be reachable
/// from well-formed inputs.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain/codomain mismatch: {0}")]
    Mismatch(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("congruence rejected: {reason}; witness classes ({a}, {b}) at element {c}")]
    CongruenceInvalid {
        reason: String,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("internal cross-check failed: {0}")]
    BackendBug(String),
}

pub type Result<T> = std::result::Result<T, Error>;
