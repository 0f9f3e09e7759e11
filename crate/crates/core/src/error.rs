use thiserror::Error;

use crate::admissible::SearchDiagnostics;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("root {root} of the polynomial is not simple modulo {p}")]
    NonSimpleRoot { root: u64, p: u64 },

    #[error("residue {value} is not coprime to {p}")]
    NotCoprime { value: u64, p: u64 },

    #[error("Q(sqrt({m}), sqrt({n})) does not have degree 4")]
    DegenerateField { m: i64, n: i64 },

    #[error("Q(sqrt({m}), sqrt({n})) is not totally imaginary")]
    NotImaginary { m: i64, n: i64 },

    #[error("{0} is not squarefree")]
    NotSquarefree(i64),

    #[error("conductor {0} is not a supported class-number-one cyclic quartic conductor")]
    UnsupportedConductor(u64),

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("element has norm {0}, not a unit")]
    NotAUnit(String),

    #[error("element is not an algebraic integer")]
    NotIntegral,

    #[error("unit data fails its invariants")]
    InvalidUnitData,

    #[error("{p} is ramified in the field")]
    Ramified { p: u64 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("both primes lie above {0}")]
    SamePrime(u64),

    #[error("conjugate index {index} out of range ({count} degree-one primes above {p})")]
    NoSuchConjugate { p: u64, index: usize, count: usize },

    #[error("no admissible pair below the bound: {0}")]
    SearchExhausted(SearchDiagnostics),

    #[error("group of size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("{0} does not generate the residue group")]
    NotGenerator(&'static str),

    #[error("class number one assumption was not supplied")]
    MissingAssumption,

    #[error("unit rank {r} plus admissible set size {s} is below 3")]
    RankTooSmall { r: u32, s: u32 },

    #[error("no prime element within coordinate bound {0}")]
    BoundExceeded(u64),

    #[error("unknown field label `{0}`")]
    UnknownLabel(String),

    #[error("certificate schema error: {0}")]
    Schema(String),

    #[error("condition ({condition}) failed: {detail}")]
    ConditionFailed { condition: u8, detail: String },

    #[error("brute-force surjectivity oracle disagrees with the certificate")]
    OracleMismatch,

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
