use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied value was outside an operation's domain.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A matrix entry no longer fits in 64 bits. Never silently wraps.
    #[error("64-bit overflow in matrix arithmetic")]
    Overflow,
    /// Input data violated an internal consistency requirement.
    #[error("inconsistent data: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
