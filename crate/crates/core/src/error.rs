use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {q} exceeds the table cap {cap}")]
    TableCap { q: u64, cap: u64 },
    #[error("ratio table for d={d}, q={q} needs {bytes} bytes, above the cap of {cap} bytes")]
    MemoryCap { d: usize, q: u64, bytes: u64, cap: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("characteristic {p} divides the dimension {d}")]
    CharacteristicDividesDimension { d: usize, p: u64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("vector is not a unit vector")]
    NonUnitVector,
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("not supported: {0}")]
    Unsupported(String),
    #[error("fields differ")]
    FieldMismatch,
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("missing value for variable {0}")]
    MissingVariable(String),
    #[error("element is not integral at p = {0}")]
    NotIntegral(u64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
