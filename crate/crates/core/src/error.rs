use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unsupported field order {0} (maximum is 64)")]
    Unsupported(u64),
    #[error("polynomial {poly} is not irreducible of degree {degree} over GF({p})")]
    Reducible { poly: u32, p: u8, degree: u8 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} out of range for GF({q})")]
    ElementOutOfRange { value: u64, q: u8 },
    #[error("geometry too large: {count} points exceeds the limit of {limit}")]
    Overflow { count: u64, limit: u64 },
    #[error("points live in different ambient spaces")]
    MixedAmbient,
    #[error("flat has codimension {0}; quotient needs codimension at least 2")]
    CodimTooSmall(usize),
    #[error("flat has projective dimension {0}, too large for this operation")]
    FlatTooLarge(usize),
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("every point of the system lies on the shortening flat")]
    EmptyQuotient,
    #[error("hyperoval construction needs even q, got {0}")]
    QOdd(u8),
    #[error("degree {degree} is not a power of two dividing q = {q}")]
    BadDegree { degree: u32, q: u8 },
    #[error("systems live in different ambient spaces")]
    AmbientMismatch,
    #[error("length {n} does not match the {mode} formula (expected {expected})")]
    ModeMismatch {
        n: u64,
        mode: &'static str,
        expected: u64,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("rule {rule_id} violated: {detail}")]
    RuleViolation { rule_id: String, detail: String },
    #[error("forcing theorem violated: {0}")]
    ForcingViolated(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable variant name, e.g. `RankDeficient`, for scripts matching on errors.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::Unsupported(_) => "Unsupported",
            Error::Reducible { .. } => "Reducible",
            Error::DivisionByZero => "DivisionByZero",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::Overflow { .. } => "Overflow",
            Error::MixedAmbient => "MixedAmbient",
            Error::CodimTooSmall(_) => "CodimTooSmall",
            Error::FlatTooLarge(_) => "FlatTooLarge",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::EmptyQuotient => "EmptyQuotient",
            Error::QOdd(_) => "QOdd",
            Error::BadDegree { .. } => "BadDegree",
            Error::AmbientMismatch => "AmbientMismatch",
            Error::ModeMismatch { .. } => "ModeMismatch",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::RuleViolation { .. } => "RuleViolation",
            Error::ForcingViolated(_) => "ForcingViolated",
            Error::Parse { .. } => "Parse",
        }
    }
}
