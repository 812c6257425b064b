use num_bigint::BigUint;
use thiserror::Error;

use crate::rle_word::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("run of symbol {symbol} has zero length")]
    InvalidRun { symbol: Symbol },
    #[error("symbol {symbol} outside alphabet of size {alphabet}")]
    InvalidSymbol { symbol: Symbol, alphabet: u16 },
    #[error("alphabet size {0} is not in 1..=256")]
    InvalidAlphabet(u16),
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: u16, right: u16 },
    #[error("exponent must be at least 1")]
    InvalidExponent,
    #[error("position {position} out of range for word of length {length}")]
    OutOfRange { position: BigUint, length: BigUint },
    #[error("pattern must be nonempty")]
    InvalidPattern,
    #[error("refusing to materialize {requested} items (cap {cap})")]
    MaterializationRefused { requested: BigUint, cap: u64 },
    #[error("run of symbol {symbol} starting at {start} never ends")]
    InfiniteRun { symbol: Symbol, start: BigUint },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("{value} lies outside the map's domain [0,1]")]
    Domain { value: String },
    #[error("denominator grew past {cap} bits at iterate {step}")]
    PrecisionCap { cap: u64, step: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
