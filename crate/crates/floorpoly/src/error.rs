use thiserror::Error;

/// Crate-wide error type.
///
/// Precondition violations, resource-budget exhaustion and malformed input
/// are kept as separate variants so callers can tell an *unanswerable*
/// question (budget) apart from an *ill-posed* one (domain error).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative radicand {0}")]
    NegativeRadicand(i64),
    #[error("radicand {0} exceeds the factorization limit")]
    RadicandTooLarge(u64),
    #[error("mixed radicands: sqrt({0}) and sqrt({1})")]
    MixedRadicands(u64, u64),
    #[error("modulus must be at least {min}, got {got}")]
    ModulusTooSmall { min: u64, got: u64 },
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("base {0} is divisible by the modulus")]
    DivisibleByModulus(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is identically zero modulo {0}")]
    ZeroModP(u64),
    #[error("polynomial must have degree at least {0}")]
    DegreeTooSmall(usize),
    #[error("coefficient of x^{0} is irrational; this operation needs rational non-constant coefficients")]
    IrrationalCoefficient(usize),
    #[error("polynomial degree must be even and at least 2")]
    NotEvenDegree,
    #[error("polynomial is not of the form a*x^n + c with n >= 2")]
    NotMonomial,
    #[error("hensel precondition failed: {0}")]
    HenselPrecondition(String),
    #[error("scan of {needed} values exceeds the budget of {budget}")]
    ScanBudget { needed: u64, budget: u64 },
    #[error("sample count {got} is below the modulus {m}")]
    TooFewSamples { got: u64, m: u64 },
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("weyl frequency h must satisfy 1 <= h < m, got h={h}, m={m}")]
    BadFrequency { h: u64, m: u64 },
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("mixed radicands at byte {pos}: sqrt({d1}) and sqrt({d2})")]
    ParseMixedField { pos: usize, d1: u64, d2: u64 },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
