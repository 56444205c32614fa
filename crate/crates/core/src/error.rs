use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field descriptor: {0}")]
    Descriptor(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("invalid zonotope (generator {index}): {reason}")]
    Construction { index: usize, reason: String },
    #[error("polygon is not a centrally symmetric convex polygon: {0}")]
    Symmetry(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("lattices are incommensurable: {0}")]
    Incommensurable(String),
    #[error("rationality condition fails: {0}")]
    Rationality(String),
    #[error("multiplicity accounting failed: {0}")]
    Accounting(String),
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
    #[error("sample point lies on a translate boundary")]
    Boundary,
    #[error("invalid window: {0}")]
    Window(String),
    #[error("unknown builtin pattern {0:?}")]
    UnknownPattern(String),
    #[error("malformed input: {0}")]
    Decode(String),
}
