use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of size {ground} exceeds the limit of {limit}")]
    GroundTooLarge { ground: usize, limit: usize },

    #[error("index {index} is outside the ground set of size {ground}")]
    IndexOutOfGround { index: usize, ground: usize },

    #[error("ground size mismatch: expected {expected}, found {found}")]
    GroundMismatch { expected: usize, found: usize },

    #[error("enumeration needs {required} elementary checks, budget is {limit}")]
    BudgetExceeded { required: u64, limit: u64 },

    #[error("family is not an ultrafilter")]
    NotAnUltrafilter,

    #[error("family is not a partition: {0}")]
    NotAPartition(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid value: {0}")]
    Invalid(String),
}
