use thiserror::Error;

use crate::arith::Split;
use crate::parse::ParseError;

#[derive(Debug, Error, Clone)]
pub enum CausticError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("the curve is not reduced (F has a repeated factor)")]
    NotReduced,
    #[error("curve degree must be at least {0}")]
    DegreeTooSmall(u32),
    #[error("the line is a component of the curve")]
    LineComponent,
    #[error("the point does not lie on the curve")]
    NotOnCurve,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("truncation cap {0} reached while expanding a branch")]
    TruncationCap(usize),
    #[error("the two curves share a component through the point")]
    CommonComponent,
    #[error("computation paths disagree: {0}")]
    Inconsistent(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Failure of an inner computation: either a zero-divisor split of some
/// context (to be handled by the caller) or a genuine error.
#[derive(Debug, Clone)]
pub enum Fail {
    Split(Split),
    Err(CausticError),
}

impl From<Split> for Fail {
    fn from(s: Split) -> Fail {
        Fail::Split(s)
    }
}

impl From<CausticError> for Fail {
    fn from(e: CausticError) -> Fail {
        Fail::Err(e)
    }
}

pub type Res<T> = Result<T, Fail>;

pub fn internal<T>(msg: impl Into<String>) -> Res<T> {
    Err(Fail::Err(CausticError::Internal(msg.into())))
}
