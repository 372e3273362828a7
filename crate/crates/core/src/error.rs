use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} of size {size} exceeds the configured budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        size: u128,
        budget: u128,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("gcd({modulus}, {q}) != 1")]
    NotCoprime { modulus: u64, q: u64 },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("code spec does not match the field: {0}")]
    SpecMismatch(String),
    #[error("root exponents {0} and {1} lie in the same cyclotomic coset")]
    ConjugateRoots(u64, u64),
    #[error("divisibility condition violated: {0}")]
    DivisibilityViolation(String),
    #[error("MacWilliams transform produced a non-integral or negative count: {0}")]
    NonIntegerResult(String),
    #[error("condition violated: {0}")]
    ConditionViolated(String),
    #[error("parity of m does not match: {0}")]
    ParityMismatch(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}
