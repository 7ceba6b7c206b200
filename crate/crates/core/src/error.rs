use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("modulus must be positive (axis {axis})")]
    NonPositiveModulus { axis: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("coset system is empty")]
    EmptySystem,

    #[error("instance too large: {what} is {size}, budget is {budget}")]
    TooLarge {
        what: &'static str,
        size: BigUint,
        budget: u64,
    },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u64, right: u64 },

    #[error("conductor {conductor} exceeds bound {bound}")]
    ConductorTooLarge { conductor: u64, bound: u64 },

    #[error("root order {order} does not divide conductor {conductor}")]
    RootOrderNotDividing { order: u64, conductor: u64 },

    #[error("invalid root fraction {numer}/{denom}")]
    InvalidRoot { numer: i64, denom: i64 },

    #[error("coset index {index} out of range for system of {len} cosets")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numeric pole estimate failed: {0}")]
    EstimateFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
