use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of colors must be at least {min}, got {n}")]
    InvalidColorCount { n: usize, min: usize },
    #[error("color {color} out of range for n = {n}")]
    ColorOutOfRange { color: usize, n: usize },
    #[error("labels must be distinct, got ({0}, {0})")]
    RepeatedLabel(usize),
    #[error("weight {0} is zero")]
    ZeroWeight(String),
    #[error("expected {expected} entries for {what}, found {found}")]
    WrongLength {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("dimension mismatch: n = {left} vs n = {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),
    #[error("weights do not admit a nonzero Yang-Baxter solution")]
    NotSolvable,
    #[error("auxiliary label unavailable: {0}")]
    AuxUnavailable(String),
    #[error("exact rational scalars required")]
    ExactOnly,
    #[error("twist invariant violated: {0}")]
    TwistInvariant(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("{what} needs {needed} candidates, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
