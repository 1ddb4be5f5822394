use thiserror::Error;

/// Errors raised by the computation engine and its verifiers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable-count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("series has nonzero constant term")]
    NonzeroConstant,

    #[error("series is not a unit (zero constant term)")]
    NotAUnit,

    #[error("singular system")]
    SingularSystem,

    #[error("inconsistent system")]
    InconsistentSystem,

    #[error("unstable key: {0}")]
    UnstableKey(String),

    #[error("oracle out of range: {0}")]
    OracleOutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("missing table entry: {0}")]
    MissingEntry(String),

    #[error("insufficient partitions for (g, n) = ({g}, {n}): rank {rank} of {unknowns}")]
    InsufficientPartitions {
        g: u32,
        n: usize,
        rank: usize,
        unknowns: usize,
    },

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("malformed cache: {0}")]
    MalformedCache(String),

    #[error("cache version mismatch: found {found}, expected {expected}")]
    CacheVersion { found: u64, expected: u64 },

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
