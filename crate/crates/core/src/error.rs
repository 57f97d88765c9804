use thiserror::Error;

/// Errors surfaced by the library, grouped by how the caller should react.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller passed arguments that violate an interface contract
    /// (mismatched dimensions, out-of-range axis, bad literal, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// A documented precondition of the operation does not hold for the
    /// given input (non-generic hyperplane, improper tiling, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An internal consistency guarantee failed; this indicates either a
    /// corrupted input masquerading as valid or a bug.
    #[error("integrity error: {0}")]
    Integrity(String),
    /// Randomized generation could not produce an output within its budget.
    #[error("generation failed: {0}")]
    Generation(String),
    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
