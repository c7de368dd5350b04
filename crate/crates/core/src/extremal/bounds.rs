//! Closed-form bounds on `h(N)` and the combinatorial checks behind them.

use super::{ExtremalError, Solver};
use crate::arith::isqrt;
use crate::sidon::{is_interval_sidon, is_sidon, IntSet};
use serde::Serialize;
use std::collections::BTreeSet;

/// `⌊(⌊√N⌋ + 1) / 2⌋`, which `h(N)` strictly exceeds for `N ≥ 5`.
pub fn lower_bound(n: u64) -> u64 {
    (isqrt(n) + 1) / 2
}

/// Pair-difference bound `⌊√(2N)⌋ + 1`.
pub fn pair_diff_upper(n: u64) -> u64 {
    isqrt(2 * n) + 1
}

/// Shift-incidence bound `⌊√N⌋ + ⌊√⌊√N⌋⌋ + 2`, valid for `N ≥ 16`.
pub fn johnson_upper(n: u64) -> Result<u64, ExtremalError> {
    if n < 16 {
        return Err(ExtremalError::Domain(format!("shift-incidence bound needs N >= 16, got {n}")));
    }
    let r = isqrt(n);
    Ok(r + isqrt(r) + 2)
}

/// `h² ≤ 4N`, the integer form of `|h − √N| ≤ √N`.
pub fn partial_check(n: u64, h: u64) -> bool {
    h * h <= 4 * n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossDiffRow {
    pub k: usize,
    pub count: usize,
    pub distinct: bool,
    pub in_range: bool,
    /// `(m − k) · k ≤ N − 1`.
    pub count_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossDiffReport {
    pub n: u64,
    pub rows: Vec<CrossDiffRow>,
}

impl CrossDiffReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.distinct && r.in_range && r.count_ok)
    }
}

/// For each split point `k`, the differences between the top `m − k` and the
/// bottom `k` elements are distinct and lie in `{1, …, N − 1}`.
pub fn cross_difference_check(set: &IntSet, n: u64) -> Result<CrossDiffReport, ExtremalError> {
    if !is_interval_sidon(n as i64, set).verified {
        return Err(ExtremalError::Precondition(format!("{set} is not an interval Sidon set in [1, {n}]")));
    }
    let a = set.as_slice();
    let m = a.len();
    let rows = (1..=m)
        .map(|k| {
            let diffs: Vec<i64> = a[k..].iter().flat_map(|&hi| a[..k].iter().map(move |&lo| hi - lo)).collect();
            let unique: BTreeSet<i64> = diffs.iter().copied().collect();
            CrossDiffRow {
                k,
                count: diffs.len(),
                distinct: unique.len() == diffs.len(),
                in_range: diffs.iter().all(|&d| d >= 1 && d < n as i64),
                count_ok: (((m - k) * k) as u64) < n,
            }
        })
        .collect();
    Ok(CrossDiffReport { n, rows })
}

/// `A ∩ (A + t)`.
pub fn shift_intersection(set: &IntSet, t: i64) -> IntSet {
    let hits = set.iter().filter(|&a| set.contains(a - t)).collect();
    IntSet::new(hits).expect("subset of a valid set")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub shifts_checked: usize,
    pub max_intersection: usize,
    /// Shifts whose intersection exceeds one point.
    pub violations: Vec<i64>,
}

impl ShiftReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `|A ∩ (A + t)| ≤ 1` for every nonzero `|t| ≤ max A − min A`.
pub fn shift_intersection_check(set: &IntSet) -> Result<ShiftReport, ExtremalError> {
    if !is_sidon(set).verified {
        return Err(ExtremalError::Precondition(format!("{set} is not Sidon")));
    }
    let span = match (set.first(), set.last()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    };
    let mut report = ShiftReport { shifts_checked: 0, max_intersection: 0, violations: Vec::new() };
    for t in (-span..=span).filter(|&t| t != 0) {
        let size = shift_intersection(set, t).len();
        report.shifts_checked += 1;
        report.max_intersection = report.max_intersection.max(size);
        if size > 1 {
            report.violations.push(t);
        }
    }
    Ok(report)
}

/// One row of the bounds table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub n: u64,
    pub h: u64,
    pub lower: u64,
    pub upper_pd: u64,
    pub upper_johnson: Option<u64>,
    pub lower_ok: bool,
    pub upper_pd_ok: bool,
    pub johnson_ok: Option<bool>,
    pub partial_ok: bool,
}

impl BoundsRow {
    pub const CSV_HEADER: &'static str = "N,h,lower,upper_pd,upper_johnson,partial_ok";

    pub fn all_ok(&self) -> bool {
        self.lower_ok && self.upper_pd_ok && self.johnson_ok != Some(false) && self.partial_ok
    }

    pub fn csv_line(&self) -> String {
        let johnson = self.upper_johnson.map(|j| j.to_string()).unwrap_or_default();
        format!("{},{},{},{},{},{}", self.n, self.h, self.lower, self.upper_pd, johnson, self.partial_ok)
    }
}

pub fn bounds_row(solver: &Solver, n: u64) -> Result<BoundsRow, ExtremalError> {
    if n < 5 {
        return Err(ExtremalError::OutOfRange { n, cap: solver.cap() });
    }
    let h = solver.h_exact(n)?.h;
    let lower = lower_bound(n);
    let upper_pd = pair_diff_upper(n);
    let upper_johnson = (n >= 16).then(|| johnson_upper(n)).transpose()?;
    Ok(BoundsRow {
        n,
        h,
        lower,
        upper_pd,
        upper_johnson,
        lower_ok: lower < h,
        upper_pd_ok: h <= upper_pd,
        johnson_ok: upper_johnson.map(|j| h <= j),
        partial_ok: partial_check(n, h),
    })
}
