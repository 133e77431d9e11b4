use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{m} exceeds the supported maximum of 2^20 elements")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("{what} is not invertible")]
    NotInvertible { what: String },
    #[error("gcd({q}, {n}) != 1")]
    NotCoprime { q: u64, n: u64 },
    #[error("{n} does not divide {order}")]
    NoRootOfUnity { n: u64, order: u64 },
    #[error("fields do not match: {0}")]
    FieldMismatch(String),
    #[error("negacyclic ambients need an odd q (got q = {0})")]
    EvenQNegacyclic(u64),
    #[error("invalid defining set: {0}")]
    InvalidDefiningSet(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("{0} does not divide x^n {1} 1")]
    NotADivisor(String, char),
    #[error("wrong message length: expected {expected}, got {got}")]
    MessageLength { expected: usize, got: usize },
    #[error("position {position} out of range for length {n}")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("enumeration of {needed} codewords exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("the dual code has no nonzero codeword")]
    NoDualCodeword,
    #[error("codes over fields with more than 256 elements are not supported")]
    CodeFieldTooLarge,
    #[error("radius {r} exceeds length {n}")]
    RadiusTooLarge { r: usize, n: usize },
    #[error("invalid code parameters: {0}")]
    BadParameters(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter `{param}` for family {id}: requires {requirement}")]
    InvalidParam {
        id: String,
        param: String,
        requirement: String,
    },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
