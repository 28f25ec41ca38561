use thiserror::Error;

/// Errors raised by the coding and analysis routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("encoder is not linear over GF(2): {0}")]
    NonLinearEncoder(String),

    #[error("malformed CRC polynomial: {0}")]
    MalformedPolynomial(String),

    #[error("data of length {len} is too short for a width-{width} CRC check")]
    CrcLength { len: usize, width: usize },

    #[error("malformed convolutional code: {0}")]
    MalformedCode(String),

    #[error("message of length {len} is shorter than encoder memory {memory}; tail-biting is infeasible")]
    TailBitingInfeasible { len: usize, memory: usize },

    #[error("invalid puncture pattern: {0}")]
    InvalidPuncture(String),

    #[error("invalid reliability sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("enumeration of 2^{k} codewords exceeds the tractability guard of 2^{guard}")]
    TractabilityGuard { k: usize, guard: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
