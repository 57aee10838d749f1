use thiserror::Error;

use crate::hilbert::SiteId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: expected {expected} symbols, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("symbol {symbol} out of range for alphabet of size {m}")]
    SymbolOutOfRange { symbol: usize, m: usize },

    #[error("elementary rule number {0} is outside 0..=255")]
    RuleNumberOutOfRange(u32),

    #[error("digit {digit} out of range for site {site} of dimension {dim}")]
    DigitOutOfRange { site: usize, digit: usize, dim: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("site {0} is not part of the space")]
    UnknownSite(SiteId),

    #[error("site {0} appears more than once")]
    DuplicateSite(SiteId),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} dimension {dim} exceeds cap {cap}")]
    CapExceeded { what: &'static str, dim: u128, cap: u128 },

    #[error("layer {layer} out of range for {layers} time layers")]
    LayerOutOfRange { layer: usize, layers: usize },

    #[error("global map is not bijective")]
    NotBijective,

    #[error("operator is not invertible")]
    NotInvertible,

    #[error("operator is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("operator is not a single cycle over its support")]
    NotSingleCycle,

    #[error("local transitions fail to commute (defect {defect:e})")]
    CommutationFailure { defect: f64 },

    #[error("ring length {0} must be even")]
    OddRing(usize),

    #[error("occupation {occupation} exceeds bosonic truncation {n_max}")]
    TruncationOverflow { occupation: u16, n_max: u16 },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
