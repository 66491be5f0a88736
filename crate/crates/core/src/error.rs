use thiserror::Error;

use crate::pe2core::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {weight} is outside the computed window: {reason}")]
    Window { weight: Weight, reason: String },
    #[error("weight {0} is not in an odd block (the ε-coefficient must be odd)")]
    NotOdd(Weight),
    #[error("P0({0}) is only built directly for a <= -3; use the Verma module otherwise")]
    NotProjectiveCase(Weight),
    #[error("cannot compose: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("runtime invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
