use num_bigint::BigUint;
use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("index {index} outside [1..{bound}]")]
    IndexOutOfRange { index: BigUint, bound: BigUint },

    #[error("words live on different levels ({left} vs {right})")]
    LevelMismatch { left: usize, right: usize },

    #[error("vertex coordinate {coordinate} invalid at level {level} (valency {valency})")]
    InvalidVertex {
        coordinate: BigUint,
        level: usize,
        valency: BigUint,
    },

    #[error("vertex paths have different lengths ({left} vs {right})")]
    PathLengthMismatch { left: usize, right: usize },

    #[error("prime sequence has no entry for level {level} and auto-extension is off")]
    SequenceExhausted { level: usize },

    #[error("invalid prime sequence: {0}")]
    InvalidSequence(String),

    #[error("non-invertible: t is divisible by the modulus")]
    NonInvertible,

    #[error("no shift requested: q is divisible by the modulus")]
    NoShiftRequested,

    #[error("no shift available: {set_size} occupied residues are too dense modulo {modulus}")]
    NoShiftAvailable { set_size: usize, modulus: BigUint },

    #[error("word not in the level-1 stabilizer (a-exponent {alpha} is nonzero)")]
    NotInStabilizer { alpha: BigUint },

    #[error("word of {letters} letters exceeds the materialization cap of {cap}")]
    WordTooLong { letters: usize, cap: usize },

    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),

    #[error("prime too small at level {level}: {detail}")]
    PrimeTooSmall { level: usize, detail: String },

    #[error("structural contradiction: {0}")]
    Structural(String),

    #[error("rounds exhausted after {rounds} eliminations with {remaining} decorations left")]
    RoundsExhausted { rounds: u32, remaining: usize },

    #[error("relation word reduced to the empty word")]
    EmptyRelation,

    #[error("verdict inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
