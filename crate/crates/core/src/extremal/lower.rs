//! Explicit lower-bound witnesses: a Singer set for a Bertrand prime, moved
//! into `{1, …, N}` by the full-size transfer.

use super::{lower_bound, ExtremalError};
use crate::arith::isqrt;
use crate::primes::bertrand_prime;
use crate::sidon::{is_interval_sidon, IntSet};
use crate::singer::build_singer_set;
use crate::transfer::{full_transfer, singer_threshold};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerWitness {
    #[serde(rename = "N")]
    pub n: u64,
    pub witness: IntSet,
    /// `⌊(⌊√N⌋ + 1)/2⌋`, which the witness size must exceed.
    pub bound: u64,
    /// Bertrand prime used, absent for the small explicit case.
    pub p: Option<u64>,
    /// Window length the Singer set was transferred into.
    pub threshold: Option<u64>,
}

/// An interval Sidon set in `{1, …, N}` of size greater than
/// `⌊(⌊√N⌋ + 1)/2⌋`, for `N ≥ 5`.
pub fn bertrand_lower(n: u64) -> Result<LowerWitness, ExtremalError> {
    if n < 5 {
        return Err(ExtremalError::Domain(format!("bertrand_lower needs N ≥ 5, got {n}")));
    }
    let bound = lower_bound(n);
    let (witness, p, threshold) = if n < 9 {
        (IntSet::new(vec![1, 2]).expect("valid"), None, None)
    } else {
        let m = isqrt(n);
        let p = bertrand_prime((m - 1) / 2);
        let singer = build_singer_set(p).map_err(|e| ExtremalError::Internal(e.to_string()))?;
        let t = singer_threshold(p);
        // For p ≥ 4 the chain t ≤ p² < m² ≤ N gives containment; smaller p
        // is checked directly against N.
        if t > n {
            return Err(ExtremalError::Internal(format!("threshold {t} for p = {p} exceeds N = {n}")));
        }
        let src = IntSet::new(singer.residues_i64()).expect("residues are distinct");
        let moved = full_transfer(&src, singer.modulus as i64, t as i64)
            .map_err(|e| ExtremalError::Internal(e.to_string()))?;
        (moved.image, Some(p), Some(t))
    };
    if !is_interval_sidon(n as i64, &witness).verified {
        return Err(ExtremalError::Internal(format!("witness {witness} is not interval Sidon in [1, {n}]")));
    }
    if witness.len() as u64 <= bound {
        return Err(ExtremalError::Internal(format!("witness size {} does not exceed {bound}", witness.len())));
    }
    Ok(LowerWitness { n, witness, bound, p, threshold })
}
