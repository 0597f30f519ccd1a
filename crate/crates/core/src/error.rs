use thiserror::Error;

/// Errors raised by the kernel. Every variant is a precondition violation;
/// exact arithmetic has no rounding failure modes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parts sum to {actual}, expected {expected}")]
    CompositionMismatch { expected: usize, actual: usize },

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("inner series of a composition must have zero constant term")]
    NonZeroInnerConstant,

    #[error("series is not a delta series (needs c0 = 0, c1 != 0)")]
    NotDelta,

    #[error("series is not invertible (needs c0 != 0)")]
    NotInvertible,

    #[error("{op} requires constant term {expected}")]
    ConstantTerm { op: &'static str, expected: &'static str },

    #[error("rational power {0} of a series whose constant term is not 1")]
    IrrationalPower(String),

    #[error("degree {degree} exceeds truncation order {order}")]
    InsufficientOrder { degree: usize, order: usize },

    #[error("Frobenius-Euler parameter must differ from 1")]
    FrobeniusPole,

    #[error("polynomial is not divisible by x (constant term {0})")]
    NotDivisibleByX(String),

    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
