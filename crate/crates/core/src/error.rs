use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("d must be even and at least 2, got {0}")]
    InvalidOrder(i64),

    #[error("inconsistent beta-set: {0}")]
    InvalidBetaSet(String),

    #[error("no {kind} box at row {row}, x = {x}")]
    NoSuchBox { kind: &'static str, row: u8, x: i64 },

    #[error("({row}, {x}) is not a {e}-co-hook")]
    InvalidCoHook { row: u8, x: i64, e: u32 },

    #[error("{0}")]
    InvalidSeries(String),

    #[error("symbol is not {0}-small")]
    NotDSmall(u32),

    #[error("region does not fit the symbol: {0}")]
    InvalidRegion(String),

    #[error("word {word} is not compatible with {template}")]
    IncompatibleWord { word: String, template: String },

    #[error("word lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("divided power produced a non-integral coefficient")]
    NonIntegral,

    #[error("canonical basis element for {0} has the wrong shape")]
    KlShape(String),

    #[error("index {index} out of range 1..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
