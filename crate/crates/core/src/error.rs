use thiserror::Error;

use crate::nu::NuReduction;

/// Errors raised by model construction, the NU reduction and the oracles.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("no real k makes the radicand a perfect square")]
    NoSquareCompletion,

    #[error("radicand is not a perfect square for k = {k}")]
    NotPerfectSquare { k: f64 },

    #[error("neither root sign gives tau' < 0")]
    NoAdmissibleBranch,

    #[error("both root signs give tau' < 0")]
    AmbiguousBranch(Box<[NuReduction; 2]>),

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("1 + c3sq = {value} <= 0 gives a complex exponent L")]
    ComplexExponent { value: f64 },

    #[error("decay rate c2 = {c2} is not positive; state is not normalizable")]
    NonNormalizable { c2: f64 },

    #[error("energy bracket [{lo}, {hi}] does not straddle a sign change")]
    Bracket { lo: f64, hi: f64 },

    #[error("shooting converged on a state with {found} nodes, expected {expected}")]
    WrongState { expected: u32, found: u32 },

    #[error("integrator step size underflow at r = {at}")]
    StepUnderflow { at: f64 },
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "DomainError",
            Error::NoSquareCompletion => "NoSquareCompletion",
            Error::NotPerfectSquare { .. } => "NotPerfectSquare",
            Error::NoAdmissibleBranch => "NoAdmissibleBranch",
            Error::AmbiguousBranch(_) => "AmbiguousBranch",
            Error::Unsupported(_) => "Unsupported",
            Error::ComplexExponent { .. } => "ComplexExponentError",
            Error::NonNormalizable { .. } => "NonNormalizableError",
            Error::Bracket { .. } => "BracketError",
            Error::WrongState { .. } => "WrongStateError",
            Error::StepUnderflow { .. } => "StepUnderflow",
        }
    }

    /// The offending numeric value, when the error carries one.
    pub fn value(&self) -> Option<f64> {
        match *self {
            Error::Domain { value, .. } => Some(value),
            Error::NotPerfectSquare { k } => Some(k),
            Error::ComplexExponent { value } => Some(value),
            Error::NonNormalizable { c2 } => Some(c2),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(what: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain { what, value })
    }
}
