//! Moving a Sidon set modulo `M` into an integer interval: restrict to a
//! cyclic window of length `N` and relabel to `{1, …, N}`.

use crate::sidon::{is_interval_sidon, is_sidon_mod, IntSet, SidonCert, SidonError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("window length {n} must lie in [1, {m}]")]
    BadWindow { n: i64, m: i64 },
    #[error("offset {u} must lie in [0, {m})")]
    BadOffset { u: i64, m: i64 },
    #[error("N = {n} is below the full-transfer threshold; the smallest admissible N is {min}")]
    Threshold { n: i64, min: i64 },
    #[error("source set is empty")]
    Empty,
    #[error("residue {r} is not in [0, {m})")]
    NotReduced { r: i64, m: i64 },
    #[error("source is not Sidon modulo {m}: {a} + {b} = {c} + {d}")]
    NotModularSidon { m: i64, a: i64, b: i64, c: i64, d: i64 },
    #[error(transparent)]
    Sidon(#[from] SidonError),
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// A window restriction together with the certificate of its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferResult {
    /// Modular certificate for the source residues.
    pub source: SidonCert,
    pub offset: i64,
    #[serde(rename = "N")]
    pub n: i64,
    pub image: IntSet,
    /// Whether every source residue landed in the window.
    pub full: bool,
}

impl TransferResult {
    pub fn modulus(&self) -> i64 {
        self.source.modulus.unwrap_or_default()
    }
}

fn check_residues(s: &IntSet, m: i64) -> Result<(), TransferError> {
    if m < 1 {
        return Err(SidonError::BadModulus(m).into());
    }
    match s.iter().find(|&r| !(0..m).contains(&r)) {
        Some(r) => Err(TransferError::NotReduced { r, m }),
        None => Ok(()),
    }
}

fn certify_modular(s: &IntSet, m: i64) -> Result<SidonCert, TransferError> {
    let cert = is_sidon_mod(m, s)?;
    match cert.violation {
        Some([a, b, c, d]) => Err(TransferError::NotModularSidon { m, a, b, c, d }),
        None => Ok(cert),
    }
}

fn image_of(s: &IntSet, m: i64, u: i64, n: i64) -> IntSet {
    let img = s.iter().map(|x| (x - u).rem_euclid(m)).filter(|&y| y < n).map(|y| y + 1).collect();
    IntSet::new(img).expect("relabelled residues are distinct")
}

/// Restricts `s` to the residues `x` with `(x − u) mod m < n`, relabelled
/// as `((x − u) mod m) + 1`. The image is re-verified to be interval Sidon.
pub fn window_restrict(s: &IntSet, m: i64, u: i64, n: i64) -> Result<TransferResult, TransferError> {
    check_residues(s, m)?;
    if n < 1 || n > m {
        return Err(TransferError::BadWindow { n, m });
    }
    if !(0..m).contains(&u) {
        return Err(TransferError::BadOffset { u, m });
    }
    let source = certify_modular(s, m)?;
    let image = image_of(s, m, u, n);
    let cert = is_interval_sidon(n, &image);
    if !cert.verified {
        return Err(TransferError::Internal(format!("window image {image} is not interval Sidon: {cert:?}")));
    }
    let full = image.len() == s.len();
    Ok(TransferResult { source, offset: u, n, image, full })
}

/// Window cardinality for every offset `u ∈ [0, m)`.
pub fn window_counts(s: &IntSet, m: i64, n: i64) -> Result<Vec<u64>, TransferError> {
    check_residues(s, m)?;
    if n < 1 || n > m {
        return Err(TransferError::BadWindow { n, m });
    }
    // x is captured by offsets x, x − 1, …, x − n + 1 (mod m).
    let mut delta = vec![0i64; m as usize + 1];
    for x in s.iter() {
        let lo = x - n + 1;
        if lo >= 0 {
            delta[lo as usize] += 1;
            delta[x as usize + 1] -= 1;
        } else {
            delta[0] += 1;
            delta[x as usize + 1] -= 1;
            delta[(lo + m) as usize] += 1;
        }
    }
    let mut acc = 0;
    Ok(delta[..m as usize]
        .iter()
        .map(|d| {
            acc += d;
            acc as u64
        })
        .collect())
}

/// The smallest offset whose window holds the most residues, and that count.
pub fn best_offset(s: &IntSet, m: i64, n: i64) -> Result<(i64, u64), TransferError> {
    let counts = window_counts(s, m, n)?;
    let best = *counts.iter().max().expect("m ≥ 1");
    let u = counts.iter().position(|&c| c == best).expect("max is attained");
    Ok((u as i64, best))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapProfile {
    pub residues: Vec<i64>,
    /// `gaps[i]` runs forward from `residues[i]` to the next residue, wrapping.
    pub gaps: Vec<i64>,
    pub g_max: i64,
    /// Smallest index attaining `g_max`.
    pub g_max_index: usize,
    pub distinct: bool,
}

/// `⌊(m + s(s−1)/2) / s⌋`, a lower bound on the largest of `s` distinct
/// positive gaps summing to `m`.
pub fn gap_floor(m: i64, s: i64) -> i64 {
    (m + s * (s - 1) / 2) / s
}

/// Smallest `N` for which [`full_transfer`] is guaranteed to keep all `s`
/// residues of a Sidon set modulo `m`.
pub fn full_threshold(m: i64, s: i64) -> i64 {
    m - gap_floor(m, s) + 1
}

pub fn gap_profile(s: &IntSet, m: i64) -> Result<GapProfile, TransferError> {
    check_residues(s, m)?;
    let r = s.as_slice();
    if r.is_empty() {
        return Err(TransferError::Empty);
    }
    let len = r.len();
    let gaps: Vec<i64> = (0..len).map(|i| if i + 1 < len { r[i + 1] - r[i] } else { m - r[i] + r[0] }).collect();
    let g_max = *gaps.iter().max().expect("nonempty");
    let g_max_index = gaps.iter().position(|&g| g == g_max).expect("max is attained");
    let mut sorted = gaps.clone();
    sorted.sort_unstable();
    let distinct = sorted.windows(2).all(|w| w[0] < w[1]);
    if is_sidon_mod(m, s)?.verified {
        if !distinct {
            return Err(TransferError::Internal(format!("Sidon set {s} mod {m} has repeated gaps {gaps:?}")));
        }
        if g_max < gap_floor(m, len as i64) {
            return Err(TransferError::Internal(format!("largest gap {g_max} is below the floor bound")));
        }
    }
    Ok(GapProfile { residues: r.to_vec(), gaps, g_max, g_max_index, distinct })
}

/// Deletes a largest cyclic gap and starts the window at the residue after
/// it, so all of `s` lands in `{1, …, n}` once `n` reaches
/// [`full_threshold`].
pub fn full_transfer(s: &IntSet, m: i64, n: i64) -> Result<TransferResult, TransferError> {
    check_residues(s, m)?;
    if s.is_empty() {
        return Err(TransferError::Empty);
    }
    certify_modular(s, m)?;
    let min = full_threshold(m, s.len() as i64);
    if n < min {
        return Err(TransferError::Threshold { n, min });
    }
    if n > m {
        return Err(TransferError::BadWindow { n, m });
    }
    let profile = gap_profile(s, m)?;
    let start = profile.residues[(profile.g_max_index + 1) % profile.residues.len()];
    let result = window_restrict(s, m, start, n)?;
    if !result.full {
        return Err(TransferError::Internal(format!("transfer of {s} mod {m} into [1, {n}] lost residues")));
    }
    Ok(result)
}

/// `p² + p + 2 − ⌊3p/2⌋`, the full-transfer threshold for a Singer set of
/// size `p + 1` modulo `p² + p + 1`.
pub fn singer_threshold(p: u64) -> u64 {
    assert!(p >= 1, "singer_threshold needs p ≥ 1");
    let t = p * p + p + 2 - 3 * p / 2;
    assert_eq!(t, p * p + 2 - p / 2);
    if p >= 4 {
        assert!(t <= p * p);
    }
    t
}
