//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by constructors, table operations, and checks.
#[derive(Debug, Error)]
pub enum Error {
    /// Two operands live on carriers of different sizes.
    #[error("carrier mismatch: {left} vs {right} points")]
    CarrierMismatch { left: usize, right: usize },

    /// Two actions are driven by different groups.
    #[error("group mismatch: operands act under different groups")]
    GroupMismatch,

    #[error("index {index} out of range for {bound} points")]
    IndexOutOfRange { index: usize, bound: usize },

    /// A slice of the table is not a bijection, so no inverse exists.
    #[error("binary operation is not invertible: slice at t={t} is not a bijection")]
    NotInvertible { t: usize },

    /// An enumeration or scan would exceed its hard cap.
    #[error("{what}: requested {requested}, cap is {max}")]
    CapacityExceeded {
        what: &'static str,
        requested: usize,
        max: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A table or file failed structural validation.
    #[error("validation failed: {0}")]
    Validation(String),

    /// The operation requires a distributive binary action.
    #[error("binary action is not distributive")]
    NotDistributive,

    /// Numeric operands have incompatible dimensions.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
