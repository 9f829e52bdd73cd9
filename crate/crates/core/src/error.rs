use thiserror::Error;

/// Errors raised by constructions, verifiers and file parsers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("symbol {symbol} is out of range for a field of order {order}")]
    SymbolOutOfRange { symbol: u8, order: u8 },

    #[error("words or codes belong to different spaces")]
    SpaceMismatch,
    #[error("minimum distance is undefined for a code with fewer than two words")]
    SingletonCode,
    #[error("space has {size} words, above the brute-force gate of {gate}")]
    SpaceTooLarge { size: u128, gate: u64 },
    #[error("operation needs a single alphabet, found orders {0:?}")]
    MixedAlphabets(Vec<u8>),
    #[error("alphabet order multisets differ")]
    AlphabetMultisetMismatch,
    #[error("code must be non-empty")]
    EmptyCode,
    #[error("code does not contain the zero word")]
    MissingZeroWord,
    #[error("word {0:?} does not belong to the space")]
    WordOutsideSpace(Vec<u8>),

    #[error("order r = {r} is outside 0..={max}")]
    OrderOutOfRange { r: i64, max: i64 },
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("codimension {0} exceeds the parity-check limit of 8")]
    CodimensionTooLarge(usize),

    #[error("table is not Latin in argument {axis}")]
    NotLatin { axis: usize },
    #[error("code is not a distance-2 MDS code: {0}")]
    NotMds2(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("degenerate order: (q-1)m - 2 = {0} is negative")]
    DegenerateOrder(i64),
    #[error("partition is not an m = 1 partition: {0}")]
    NotM1Partition(String),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("sphere size {sphere} differs from substituted alphabet order {order}")]
    SphereMismatch { sphere: u128, order: u8 },
    #[error("partition shape mismatch: {0}")]
    PartitionShapeMismatch(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("excluded parameters: {0}")]
    ExcludedParameters(String),
    #[error("code is not 1-perfect")]
    NotPerfect,
    #[error("class count mismatch: expected {expected}, found {found}")]
    ClassCountMismatch { expected: usize, found: usize },
    #[error("classes do not partition the whole space: {0}")]
    NotAPartitionOfSpace(String),
    #[error("quasigroup has arity {arity} and order {order}, expected arity {want_arity} and order {want_order}")]
    BadQuasigroupShape {
        arity: usize,
        order: usize,
        want_arity: usize,
        want_order: usize,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
