use thiserror::Error;

/// An argument outside the domain of an operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct DomainError(String);

impl DomainError {
    pub fn new(message: impl Into<String>) -> Self {
        DomainError(message.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TuningError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("a step set needs at least one step")]
    EmptyStepSet,
    #[error("steps compose to {product} instead of 2/1: the octave does not close")]
    ClosureViolation { product: String },
    #[error("step {index} does not raise the pitch ({from} -> {to} times the octave root)")]
    MonotonicityViolation { index: usize, from: String, to: String },
    #[error("step {index}: a root offset cannot follow an irrational ratio exactly")]
    Unrepresentable { index: usize },
    #[error("coordinate ({k}, {i}) is out of range for a space with {n} steps")]
    CoordinateOutOfRange { k: i64, i: u32, n: u32 },
}
