use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the supported maximum 2^16")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("modulus has {got} coefficients, expected {expected} for degree {degree}")]
    DegreeMismatch {
        degree: u32,
        expected: usize,
        got: usize,
    },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("coefficient {value} is out of range for F_{q}")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("enumeration of {count} subspaces exceeds the cap of {cap}")]
    EnumerationCap { count: u128, cap: u128 },
    #[error("matrix is singular")]
    Singular,
    #[error("multiplicative order not found within {0} steps")]
    OrderNotFound(u64),
    #[error("no primitive polynomial of degree {0} found")]
    NoPrimitive(usize),
    #[error("polynomial is not primitive over F_{0}")]
    NotPrimitive(u32),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("exponent {exp} out of range 0..={max}")]
    ExponentOutOfRange { exp: u64, max: u64 },
    #[error("generator S[{index}] has rank {rank}, expected {expected}:\n{matrix}")]
    RankDeficient {
        index: usize,
        rank: usize,
        expected: usize,
        matrix: String,
    },
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("flag code is empty")]
    EmptyCode,
    #[error("at least two flags are required, got {0}")]
    TooFewFlags(usize),
    #[error("erasure count {erasures} at shot {shot} exceeds the shot dimension")]
    ErasureOutOfRange { shot: usize, erasures: usize },
    #[error("received subspace at shot {0} is not contained in the sent subspace")]
    NotAnErasure(usize),
    #[error("step {step} at shot {shot}: {candidates} codewords contain the received subspace")]
    Ambiguous {
        step: u8,
        shot: usize,
        candidates: usize,
    },
    #[error("step {step} at shot {shot}: no codeword contains the received subspace")]
    NoCandidate { step: u8, shot: usize },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
