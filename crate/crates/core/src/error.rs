use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and analytic layers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields: {0}")]
    FieldMismatch(String),
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("two places above infinity (split model): {0}")]
    SplitInfinity(String),
    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),
    #[error("requested precision too low: {0}")]
    PrecisionTooLow(i64),
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("degree bound {bound} too small: {detail}")]
    BoundTooSmall { bound: i64, detail: String },
    #[error("degree basis too short: need index {need}, have {have}")]
    BasisTooShort { need: usize, have: usize },
    #[error("precision {requested} unreachable within enumeration budget; achieved {achieved}")]
    PrecisionUnreachable { requested: i64, achieved: i64 },
    #[error("denominator vanishes to working precision (increase precision)")]
    DenominatorVanishes,
    #[error("coefficient domains do not match: {0}")]
    DomainMismatch(String),
    #[error("precision loss: leading coefficient too close to the precision floor ({0})")]
    PrecisionLoss(String),
    #[error("coefficient not integral at the reduction prime: {0}")]
    NonIntegralCoefficient(String),
    #[error("inconsistent series: non-q-power coefficient z^{exponent} fails to vanish")]
    InconsistentSeries { exponent: usize },
    #[error("insufficient exponential coefficients: need {need}, have {have}")]
    InsufficientCoefficients { need: usize, have: usize },
    #[error("isogeny remainder not zero to precision: {0}")]
    RemainderNotZero(String),
    #[error("modulus must be a nonzero integral ideal")]
    ZeroModulus,
    #[error("unsupported infinite place (d_infinity = {0}) for this operation")]
    UnsupportedInfinitePlace(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
