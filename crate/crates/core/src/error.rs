use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in GF({0})")]
    DivisionByZero(u16),

    #[error("{0} is not a prime in [2, 65536)")]
    NotPrime(u32),

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u16, u16),

    #[error("matrix {index} is not alternating: {reason}")]
    NotAlternating { index: usize, reason: String },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("no r < {n} satisfies the individualisation inequalities for m = {m}")]
    Infeasible { n: usize, m: usize },

    #[error("requested dimension {m} exceeds the ambient dimension {max}")]
    DimensionTooLarge { m: usize, max: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("the group construction needs an odd prime, got p = 2")]
    EvenCharacteristic,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
