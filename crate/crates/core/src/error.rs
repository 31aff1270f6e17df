use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("symbol {symbol} at position {position} is outside 0..{v}")]
    SymbolOutOfRange {
        symbol: u32,
        position: usize,
        v: u32,
    },

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid position set {positions:?} for k={k}")]
    InvalidPositionSet { positions: Vec<usize>, k: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("size guard exceeded: {what} = {requested} > limit {limit}")]
    SizeGuard {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("weight {weight} of {tuple} is not above t={t}")]
    WeightNotAboveT {
        tuple: String,
        weight: usize,
        t: usize,
    },

    #[error("weight {weight} of {tuple} exceeds t={t}")]
    WeightExceedsT {
        tuple: String,
        weight: usize,
        t: usize,
    },

    #[error("{0} is not prime (or not below 2^32)")]
    NotPrime(u64),

    #[error("invalid intercalate factor {index}: both symbols are {symbol}")]
    DegenerateFactor { index: usize, symbol: u32 },

    #[error("cell ({row},{col}) breaks the Latin property: {reason}")]
    NotLatin {
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("vector is not in the null space: row {row} evaluates to {value}")]
    NotInNullSpace { row: String, value: String },

    #[error("reconstruction mismatch at {0}")]
    ReconstructionMismatch(String),

    #[error("parse error at line {line}, field {field}: {message}")]
    Parse {
        line: usize,
        field: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, field: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field,
            message: message.into(),
        }
    }
}
