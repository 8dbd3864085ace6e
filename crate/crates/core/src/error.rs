use thiserror::Error;

/// Errors raised by the algebra kernel and the command-line layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic must be prime, got {0}")]
    NotPrime(u64),

    #[error("characteristic {0} out of range (need 2 <= p < 2^31)")]
    CharacteristicRange(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfP { q: u64, p: u32 },

    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("stabilization failure: {0}")]
    Stabilization(String),

    #[error("empty variety: the ideal is the unit ideal")]
    EmptyVariety,

    #[error("containment failure: {0}")]
    NotContained(String),

    #[error("associativity ratio failure: {0}")]
    AssociativityRatio(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) => 3,
            Error::Stabilization(_) | Error::AssociativityRatio(_) => 4,
            _ => 2,
        }
    }
}
