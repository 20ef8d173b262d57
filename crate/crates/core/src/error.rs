use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Divergent series are not errors: they are reported through
/// [`SumValue::Divergent`](crate::sequences::SumValue).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("sequence is not monotone: {0}")]
    NotMonotone(#[from] crate::sequences::MonotoneViolation),

    #[error("index range [{m}, {n}] is invalid: {reason}")]
    InvalidRange { m: usize, n: usize, reason: String },

    #[error("side condition of `{lemma}` violated: {reason}")]
    SideCondition { lemma: &'static str, reason: String },

    #[error("quadrature with {points} points is too coarse for horizon {horizon} and order {k} (need at least {required})")]
    QuadratureTooCoarse {
        points: usize,
        horizon: usize,
        k: usize,
        required: usize,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
