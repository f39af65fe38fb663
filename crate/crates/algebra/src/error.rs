use thiserror::Error;

/// Which resource limit a computation ran into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetKind {
    Steps,
    Terms,
    Time,
}

impl std::fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BudgetKind::Steps => write!(f, "reduction steps"),
            BudgetKind::Terms => write!(f, "polynomial terms"),
            BudgetKind::Time => write!(f, "wall time"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("{0} is not a prime in [3, 2^62)")]
    InvalidModulus(u64),
    #[error("value has a denominator divisible by {0}")]
    BadReduction(u64),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("rational literal `{0}` not allowed in a prime-field ring")]
    RationalLiteral(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("characteristic {char} too small (need > {need})")]
    CharacteristicTooSmall { char: u64, need: u64 },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("budget exceeded: {0}")]
    Budget(BudgetKind),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
