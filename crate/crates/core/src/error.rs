use thiserror::Error;

/// Errors raised by the arithmetic, evaluation and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("field of size {p}^{r} exceeds the table cap of {cap} elements")]
    DegreeTooLarge { p: u64, r: u32, cap: u64 },

    #[error("curve is singular over the field (discriminant vanishes)")]
    SingularCurve,

    #[error("invalid curve parameter: {0}")]
    InvalidCurveParameter(String),

    #[error("denominator of {0} is divisible by p")]
    DenominatorDivisibleByP(String),

    #[error("Teichmuller lift of zero is undefined")]
    ZeroInput,

    #[error("element is not a unit in the Galois ring")]
    NonUnitInverse,

    #[error("hypergeometric argument t must be nonzero")]
    ZeroArgument,

    #[error("accumulated value is not Galois-stable (non-constant coordinates)")]
    NonConstantResult,

    #[error("value has negative p-adic valuation and no integer representative")]
    NonIntegralResult,

    #[error("precision p^N = {modulus} does not exceed twice the bound {bound}")]
    PrecisionUnderflow { modulus: u64, bound: u64 },

    #[error("no integer of absolute value <= {bound} is congruent to {residue} mod {modulus}")]
    NoRepresentative { residue: u64, modulus: u64, bound: u64 },

    #[error("precision {precision} is out of range for p = {p}")]
    PrecisionOutOfRange { p: u64, precision: u32 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("field of size {0} is too large for the complex oracle")]
    FieldTooLarge(u64),

    #[error("p-adic context does not match the field")]
    ContextMismatch,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::DegreeTooLarge { .. } => "DegreeTooLarge",
            Error::SingularCurve => "SingularCurve",
            Error::InvalidCurveParameter(_) => "InvalidCurveParameter",
            Error::DenominatorDivisibleByP(_) => "DenominatorDivisibleByP",
            Error::ZeroInput => "ZeroInput",
            Error::NonUnitInverse => "NonUnitInverse",
            Error::ZeroArgument => "ZeroArgument",
            Error::NonConstantResult => "NonConstantResult",
            Error::NonIntegralResult => "NonIntegralResult",
            Error::PrecisionUnderflow { .. } => "PrecisionUnderflow",
            Error::NoRepresentative { .. } => "NoRepresentative",
            Error::PrecisionOutOfRange { .. } => "PrecisionOutOfRange",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::ContextMismatch => "ContextMismatch",
            Error::InvalidParameters(_) => "InvalidParameters",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
