use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("exponent ({0},{1},{2}) is outside A(2)")]
    InvalidExponent(u8, u8, u8),
    #[error("matrix shape mismatch: {0}x{1} then {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("linear relations are inconsistent (the constant 1 lies in their span)")]
    Inconsistent,
    #[error("substitution did not stabilize after {0} compositions")]
    NonStabilizing(usize),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("unknown case `{0}` (expected sym, gen or b)")]
    UnknownCase(String),
    #[error("cannot parse point `{input}`: {reason}")]
    MalformedPoint { input: String, reason: String },
    #[error("coordinate value {0} is not 0 or 1")]
    PointValue(u32),
    #[error("point does not satisfy the defining relations")]
    OffVariety,
    #[error("invalid profile: {0}")]
    Profile(String),
    #[error("malformed module definition: {0}")]
    Moddef(String),
}
