use thiserror::Error;

/// Errors raised by the group, set and bound machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a group needs at least one cyclic factor")]
    EmptyFactors,
    #[error("cyclic factor at position {position} is zero")]
    ZeroFactor { position: usize },
    #[error("group order {order} exceeds the limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("element index {index} is out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("operands belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },
    #[error("operand must be a nonempty set")]
    EmptyOperand,
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("the trivial group has no proper subgroup")]
    TrivialGroup,
    #[error("group order {order} is not prime")]
    NotPrimeOrder { order: usize },
    #[error("threshold t must be at least 1, got {t}")]
    InvalidThreshold { t: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
