use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("degree must be positive, got {0}")]
    ZeroDegree(u32),

    #[error("field of order {p}^{n} exceeds the configured bound {bound}")]
    FieldTooLarge { p: u64, n: u32, bound: u64 },

    #[error("no generator found for GF({p}^{n}); the multiplication table is inconsistent")]
    NoGenerator { p: u64, n: u32 },

    #[error("malformed element: {0}")]
    MalformedElement(String),

    #[error("base mismatch: expected {expected}, found {found}")]
    BaseMismatch { expected: String, found: String },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("0^{0} is undefined")]
    ZeroPower(i64),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("operation requires an enumerable base, got {0}")]
    NotEnumerable(String),

    #[error("{what} needs {size} steps, above the configured bound {bound}")]
    BoundExceeded { what: &'static str, size: u128, bound: u64 },

    #[error("invalid anchor vector: {0}")]
    InvalidAnchor(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(format!("{} (line {}, column {})", err, err.line(), err.column()))
    }
}
