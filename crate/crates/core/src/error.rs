use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected} exponents, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live in different polynomial rings")]
    RingMismatch,

    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("variable set is not independent: {0}")]
    NotIndependent(String),

    #[error("variable set is independent but not maximal ({size} < {dimension})")]
    NotMaximal { size: usize, dimension: usize },

    #[error("ideal is not zero-dimensional in the localized ring")]
    NotZeroDimensional,

    #[error("the ideal is the whole ring")]
    UnitIdeal,

    #[error("factorization incomplete: {0}")]
    FactorizationIncomplete(String),

    #[error("recursion depth limit {0} exceeded")]
    RecursionLimit(usize),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("no selection rule is known for partition {0:?}")]
    RuleUnspecified((u32, u32, u32)),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
