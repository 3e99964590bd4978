use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("exponent {exponent} exceeds the configured limit {limit}")]
    ExponentLimit { exponent: u32, limit: u32 },

    #[error("grid with 2^{log2_cells} cells exceeds the cell cap of {cap}")]
    CellLimit { log2_cells: u32, cap: u64 },

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("grid specs differ: {0:?} vs {1:?}")]
    SpecMismatch(Vec<u32>, Vec<u32>),

    #[error("invalid side length {0}: sides must lie in (0, 1]")]
    InvalidSide(String),

    #[error("{0} is not a power of two in (0, 1]")]
    NotDyadicPower(String),

    #[error("not a strict chain: {0}")]
    NotStrictChain(String),

    #[error("empty family")]
    EmptyFamily,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric overflow: {0}")]
    Overflow(String),

    #[error("search cap exceeded: family of size {size} above cap {cap}")]
    SearchCap { size: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
