//! Library error type.
//!
//! Every fallible public function in this crate returns [`Result`]. Invalid
//! *input* is always reported as an error value; panics are reserved for
//! internal invariant violations (bugs).

use thiserror::Error;

/// Errors produced by construction, field arithmetic, and scan routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter that must be prime was not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// A parameter that must be a prime power p^r with r >= 1 was not.
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    /// The requested field order exceeds the supported maximum.
    #[error("field order {order} exceeds the supported maximum {max}")]
    FieldTooLarge { order: u64, max: u64 },

    /// Zero was passed where a positive integer is required.
    #[error("argument must be nonzero")]
    ZeroArgument,

    /// Division by zero / inverse of the additive identity.
    #[error("the zero element has no multiplicative inverse")]
    ZeroInverse,

    /// An element value outside the canonical range 0..q of its field.
    #[error("element {value} is out of range for a field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },

    /// The given element is not a primitive element of the field.
    #[error("element {0} is not primitive")]
    NotPrimitive(u64),

    /// A sequence that must be a permutation of 1..=n was not.
    #[error("sequence is not a permutation of 1..={0}")]
    NotPermutation(usize),

    /// Two permutations that must share a length did not.
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    /// Cross-correlation of a permutation with itself (or an identical copy)
    /// was requested where distinct permutations are required.
    #[error("permutations are identical; distinct permutations are required")]
    IdenticalPermutations,

    /// A family scan needs at least two distinct members.
    #[error("family has {0} distinct member(s); at least 2 are required")]
    FamilyTooSmall(usize),

    /// A shift or offset argument outside its admissible range.
    #[error("{name} = {value} is outside {min}..={max}")]
    ArgumentOutOfRange {
        name: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    /// A parameter violates a side condition (stated in the message).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A serialized permutation or table could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
