use thiserror::Error;

/// Errors raised by the exact-algebra, sequence and orbit routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("pole at z = {at}")]
    Pole { at: i64 },

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("system matrix is singular over k(z)")]
    SingularSystem,

    #[error("matrix is not invertible")]
    SingularMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("insufficient data: need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("horizon {horizon} is below the required minimum {min}")]
    HorizonTooSmall { horizon: u64, min: u64 },

    #[error("sequences have no overlapping index")]
    EmptyOverlap,

    #[error("transition matrix is not constant: mismatch at index {index}")]
    NotConstant { index: u64 },

    #[error("sequence is not a solution: coordinate check fails at index {index}")]
    NotASolution { index: u64 },

    #[error("fundamental matrices belong to different systems")]
    MismatchedSystems,

    #[error(
        "window too small: need horizon - start >= 4*window and window >= 2*max_period \
         (span {span}, window {window}, max period {max_period})"
    )]
    WindowTooSmall {
        span: u64,
        window: u64,
        max_period: u64,
    },

    #[error("orbit map undefined at abscissa {abscissa}")]
    Undefined { abscissa: i64 },

    #[error("orbit undefined after {step} steps (map undefined at abscissa {abscissa})")]
    UndefinedOrbit { step: u64, abscissa: i64 },

    #[error("orbit start abscissa {0} is negative")]
    NegativeAbscissa(i64),

    #[error("subvariety needs at least one generator")]
    EmptySubvariety,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
