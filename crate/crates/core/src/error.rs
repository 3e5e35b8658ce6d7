use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names are stable: the CLI prints them verbatim on the diagnostic
/// stream, so scripts can match on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {order} exceeds the table cap {cap}")]
    TableCapExceeded { order: u128, cap: u64 },
    #[error("no irreducible polynomial of degree {k} over GF({q}) found")]
    NoIrreducibleFound { q: u64, k: u32 },
    #[error("element or polynomial does not belong to this field")]
    FieldMismatch,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(u64, u64),
    #[error("no element of order {n} in GF({q}^{k})")]
    OrderMismatch { q: u64, k: u32, n: u64 },
    #[error("division by the zero polynomial")]
    DivideByZeroPoly,
    #[error("coefficient outside the base field")]
    NotInBaseField,
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("x^{n} - 1 has no irreducible factor of degree {k}")]
    NoDegreeKFactor { n: u64, k: u32 },
    #[error("multiplicative character evaluated at zero")]
    CharacterOfZero,
    #[error("phase of the zero complex value is undefined")]
    UndefinedPhase,
    #[error("S({iota}) has imaginary residue {residue:e}")]
    NonRealResult { iota: u64, residue: f64 },
    #[error("weight estimate {value} is not an integer")]
    NonIntegerWeight { value: f64 },
    #[error("inconsistent weight spectrum: {0}")]
    SpectrumMismatch(String),
    #[error("brute-force oracle needs {order} words, cap is {cap}")]
    OracleCapExceeded { order: u64, cap: u64 },
    #[error("dual coefficient of weight {weight} is not a non-negative integer")]
    NonIntegerDualCoefficient { weight: usize },
    #[error("minimum digit sum {min_digit_sum} is not divisible by {q_minus_1}")]
    NonIntegralTheta { min_digit_sum: u64, q_minus_1: u64 },
    #[error("code is not in ICQ for this epsilon: {0}")]
    MembershipFailed(String),
    #[error("recovered spectrum differs from the noiseless reference: {0}")]
    RecoveryFailed(String),
    #[error("output failed: {0}")]
    Output(String),
}

impl Error {
    /// The variant name, e.g. `"NotCoprime"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::TableCapExceeded { .. } => "TableCapExceeded",
            Error::NoIrreducibleFound { .. } => "NoIrreducibleFound",
            Error::FieldMismatch => "FieldMismatch",
            Error::LogOfZero => "LogOfZero",
            Error::NotCoprime(..) => "NotCoprime",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::DivideByZeroPoly => "DivideByZeroPoly",
            Error::NotInBaseField => "NotInBaseField",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::NoDegreeKFactor { .. } => "NoDegreeKFactor",
            Error::CharacterOfZero => "CharacterOfZero",
            Error::UndefinedPhase => "UndefinedPhase",
            Error::NonRealResult { .. } => "NonRealResult",
            Error::NonIntegerWeight { .. } => "NonIntegerWeight",
            Error::SpectrumMismatch(_) => "SpectrumMismatch",
            Error::OracleCapExceeded { .. } => "OracleCapExceeded",
            Error::NonIntegerDualCoefficient { .. } => "NonIntegerDualCoefficient",
            Error::NonIntegralTheta { .. } => "NonIntegralTheta",
            Error::MembershipFailed(_) => "MembershipFailed",
            Error::RecoveryFailed(_) => "RecoveryFailed",
            Error::Output(_) => "Output",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
