use thiserror::Error;

/// Errors raised by ring construction, polynomial arithmetic and code queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("nilpotency index must be at least 1, got {0}")]
    BadNilpotency(u32),
    #[error("residue degree must be at least 1")]
    BadDegree,
    #[error("ring too large: p^t = {0} exceeds 2^31")]
    RingTooLarge(u128),
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: usize, found: usize },
    #[error("polynomial is reducible over the residue field")]
    Reducible,
    #[error("polynomial is not square-free over the residue field")]
    NotSquareFree,
    #[error("ambient is not semisimple: modulus {index} has a repeated residue factor")]
    NotSemisimple { index: usize },
    #[error("ambient is not abelian (every modulus must be X^e - 1)")]
    NotAbelian,
    #[error("element is not a unit")]
    NotUnit,
    #[error("element is not divisible by a^{0}")]
    NotDivisible(u32),
    #[error("residue factors do not multiply to the residue of the input")]
    ResidueMismatch,
    #[error("residue factors are not pairwise coprime")]
    NotCoprime,
    #[error("residue is not idempotent")]
    NotIdempotent,
    #[error("exponent {value} for class {class} is outside 0..={t}")]
    ExponentOutOfRange { class: usize, value: u32, t: u32 },
    #[error("exponent map has {found} entries, ambient has {expected} classes")]
    ClassCount { expected: usize, found: usize },
    #[error("element does not belong to this ring")]
    WrongRing,
    #[error("minimum distance of the zero code is undefined")]
    ZeroCode,
    #[error("enumeration of {needed} words exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Budget and usage errors are distinguished from domain errors by the CLI exit code.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Parse(_))
    }

    /// Stable snake-case identifier of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::BadNilpotency(_) => "bad_nilpotency",
            Error::BadDegree => "bad_degree",
            Error::RingTooLarge(_) => "ring_too_large",
            Error::NotMonic => "not_monic",
            Error::ModulusDegree { .. } => "modulus_degree",
            Error::Reducible => "reducible",
            Error::NotSquareFree => "not_square_free",
            Error::NotSemisimple { .. } => "not_semisimple",
            Error::NotAbelian => "not_abelian",
            Error::NotUnit => "not_unit",
            Error::NotDivisible(_) => "not_divisible",
            Error::ResidueMismatch => "residue_mismatch",
            Error::NotCoprime => "not_coprime",
            Error::NotIdempotent => "not_idempotent",
            Error::ExponentOutOfRange { .. } => "exponent_out_of_range",
            Error::ClassCount { .. } => "class_count",
            Error::WrongRing => "wrong_ring",
            Error::ZeroCode => "zero_code",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Precondition(_) => "precondition",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
