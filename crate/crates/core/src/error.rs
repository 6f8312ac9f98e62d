use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable list: {0}")]
    InvalidVariables(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("exponent exceeds the configured bound {0}")]
    ExponentOverflow(u64),
    #[error("the zero polynomial has no initial form")]
    ZeroPolynomial,
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { q: u64, p: u64 },
    #[error("radical containment not confirmed: {0}")]
    RadicalUnconfirmed(String),
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("chain of ideals is not monotone: {0}")]
    ChainViolation(String),
    #[error("ideal file, line {line}: {msg}")]
    IdealFile { line: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
