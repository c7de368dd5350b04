//! Arithmetic in GF(p^d) over a polynomial basis, with relative traces,
//! generators and discrete logarithms.
//!
//! The modulus of each field is the monic irreducible with the smallest
//! coefficient code, so every derived object (generators, logs, Singer sets)
//! is reproducible.

mod dlog;
mod field;
mod poly;

pub use dlog::DlogTable;
pub use field::{FFElement, FieldId, GaloisField};
pub use poly::{find_irreducible, is_irreducible_exhaustive, is_irreducible_rabin, PrimePoly};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive, got {0}")]
    BadDegree(u32),
    #[error("GF({p}^{d}) exceeds the supported order 2^24")]
    TooLarge { p: u64, d: u32 },
    #[error("modulus {0} is not a monic irreducible")]
    BadModulus(String),
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("element is not a power of the chosen base")]
    NotInGroup,
    #[error("{q} is not the order of a subfield of GF({p}^{d})")]
    BadSubfield { q: u64, p: u64, d: u32 },
    #[error("invalid element: {0}")]
    BadElement(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub(crate) fn check_size(p: u64, d: u32) -> Result<u64, FfError> {
    match crate::arith::checked_pow(p as u128, d) {
        Some(n) if n <= MAX_ORDER as u128 => Ok(n as u64),
        _ => Err(FfError::TooLarge { p, d }),
    }
}
