use std::fmt;

use thiserror::Error;

/// A violated precondition of a bound or code construction, named so callers
/// can tell exactly which requirement failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotPrime { p: u64 },
    EvenExtensionDegree { n: u32 },
    ExtensionDegreeTooSmall { n: u32 },
    DegreeNotCoprime { m: u64, p: u64 },
    DegreeTooSmall { m: u64 },
    NonIntegralGenus { m: u64, p: u64 },
    ZeroGenus { detail: String },
    OutOfRange { what: &'static str, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPrime { p } => write!(f, "{p} is not prime"),
            Violation::EvenExtensionDegree { n } => write!(f, "extension degree n = {n} must be odd"),
            Violation::ExtensionDegreeTooSmall { n } => write!(f, "extension degree n = {n} must be at least 3"),
            Violation::DegreeNotCoprime { m, p } => write!(f, "gcd(m, p) = gcd({m}, {p}) must be 1"),
            Violation::DegreeTooSmall { m } => write!(f, "degree m = {m} must be at least 2"),
            Violation::NonIntegralGenus { m, p } => {
                write!(f, "genus (m-1)(p-1)/2 is not an integer for m = {m}, p = {p}")
            }
            Violation::ZeroGenus { detail } => write!(f, "genus is 0, bound undefined: {detail}"),
            Violation::OutOfRange { what, detail } => write!(f, "{what} out of range: {detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("encoding {encoding} is not an element of a field of order {order}")]
    ElementOutOfRange { encoding: u64, order: u64 },
    #[error("capacity exceeded: {required} {what} required, budget is {budget}")]
    Capacity { what: &'static str, required: u128, budget: u128 },
    #[error("precondition violated: {0}")]
    Precondition(Violation),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Stable machine-readable identifier used in structured CLI errors.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::DivisionByZero => "division_by_zero",
            Error::MixedFields => "mixed_fields",
            Error::ElementOutOfRange { .. } => "element_out_of_range",
            Error::Capacity { .. } => "capacity_exceeded",
            Error::Precondition(_) => "precondition_violated",
            Error::InconsistentCounts(_) => "inconsistent_counts",
            Error::Parse(_) => "malformed_input",
            Error::InvalidPolynomial(_) => "invalid_polynomial",
            Error::InvalidCode(_) => "invalid_code",
            Error::Invariant(_) => "invariant_violated",
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Precondition(v)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
