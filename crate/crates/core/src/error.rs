use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("discriminant mismatch: sqrt({0}) vs sqrt({1})")]
    DiscriminantMismatch(String, String),
    #[error("exponent outside the active window: {0}")]
    ExponentOutOfWindow(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    #[error("monomial not classified by the decomposition: {0}")]
    UnclassifiedMonomial(String),
    #[error("parse error: {0}")]
    Parse(String),
}
