use thiserror::Error;

/// Errors raised by scoring, distribution construction and the CLI layer.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("sequence must contain at least one digit")]
    EmptySequence,
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(usize),
    #[error("digit {digit} at position {position} is outside the alphabet 0..{alphabet}")]
    DigitOutOfRange {
        digit: u32,
        position: usize,
        alphabet: usize,
    },
    #[error("operation requires a binary sequence, got alphabet size {0}")]
    NotBinary(usize),
    #[error("count vector sums to {sum}, expected {n}")]
    CountMismatch { sum: u64, n: u64 },
    #[error("descending-pair count {s_plus} exceeds the {mixed} mixed pairs of the tie profile")]
    TooManyDescendingPairs { s_plus: u64, mixed: u64 },
    #[error("probability p must lie strictly between 0 and 1, got {0}")]
    InvalidProbability(String),
    #[error("sequence length must be at least {min}, got {got}")]
    LengthTooSmall { min: usize, got: usize },
    #[error("|S| = {s} exceeds the maximum n(n-1)/2 = {max} for n = {n}")]
    ScoreOutOfRange { s: i64, n: usize, max: i64 },
    #[error("estimated work of {estimate} exceeds the resource cap {cap}")]
    ResourceCap { estimate: u128, cap: u128 },
    #[error("parse error at byte {offset}: {message} (token {token:?})")]
    Parse {
        offset: usize,
        token: String,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
