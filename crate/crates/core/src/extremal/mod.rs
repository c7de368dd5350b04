//! The extremal function `h(N)` (largest Sidon subset of `{1, …, N}`) and the
//! finite upper and lower bounds around it.
//!
//! `h(N)` is computed through optimal rulers: a Sidon set of size `m` inside
//! `{1, …, N}` is, after translation, a set of `m` marks in `[0, N − 1]` with
//! pairwise distinct differences. [`Solver`] memoises the optimal span of each
//! mark count it has settled, and uses those spans to prune later searches.

mod bits;
mod bounds;
mod lower;
mod search;

pub use bounds::{
    bounds_row, cross_difference_check, johnson_upper, lower_bound, pair_diff_upper, partial_check,
    shift_intersection, shift_intersection_check, BoundsRow, CrossDiffReport, CrossDiffRow, ShiftReport,
};
pub use lower::{bertrand_lower, LowerWitness};

use crate::sidon::IntSet;
use search::Query;
use serde::Serialize;
use std::sync::Mutex;

pub const DEFAULT_CAP: u64 = 200;
/// Widest interval the bitset search can represent.
pub const MAX_SUPPORTED_N: u64 = bits::WIDTH as u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtremalError {
    #[error("N = {n} is outside the solver range [1, {cap}]")]
    OutOfRange { n: u64, cap: u64 },
    #[error("{0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// `h(N)` together with the lexicographically smallest maximum witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HResult {
    #[serde(rename = "N")]
    pub n: u64,
    pub h: u64,
    pub witness: IntSet,
    /// Search nodes visited while producing this answer. Varies with the
    /// worker count and with what the solver had memoised beforehand.
    #[serde(skip)]
    pub nodes: u64,
}

#[derive(Debug, Default)]
struct RulerTable {
    /// `spans[j]` is the optimal span of a `j`-mark ruler; `spans[0] = spans[1] = 0`.
    spans: Vec<u32>,
    /// Largest span proven too short for `spans.len()` marks.
    excluded: u32,
    /// Gap sequence of the lex-first maximum witness for `N = 1, 2, …`.
    witnesses: Vec<Vec<u32>>,
}

impl RulerTable {
    fn new() -> Self {
        RulerTable { spans: vec![0, 0], excluded: 0, witnesses: Vec::new() }
    }

    fn largest_fitting(&self, length: u32) -> u64 {
        self.spans.iter().rposition(|&s| s <= length).unwrap_or(0) as u64
    }
}

/// Exact solver for `h(N)`, reusable across calls so that a sweep over `N`
/// settles each ruler order once.
pub struct Solver {
    cap: u64,
    pool: rayon::ThreadPool,
    table: Mutex<RulerTable>,
}

impl Solver {
    pub fn new(cap: u64, workers: usize) -> Result<Self, ExtremalError> {
        if cap > MAX_SUPPORTED_N {
            return Err(ExtremalError::Domain(format!(
                "cap {cap} exceeds the largest supported interval {MAX_SUPPORTED_N}"
            )));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| ExtremalError::Pool(e.to_string()))?;
        Ok(Solver { cap, pool, table: Mutex::new(RulerTable::new()) })
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Optimal spans settled so far, indexed by mark count.
    pub fn known_spans(&self) -> Vec<u32> {
        self.table.lock().expect("ruler table poisoned").spans.clone()
    }

    pub fn h_exact(&self, n: u64) -> Result<HResult, ExtremalError> {
        if n < 1 || n > self.cap {
            return Err(ExtremalError::OutOfRange { n, cap: self.cap });
        }
        let mut table = self.table.lock().expect("ruler table poisoned");
        let mut nodes = 0;
        while (table.witnesses.len() as u64) < n {
            nodes += self.advance(&mut table)?;
        }
        let gaps = &table.witnesses[n as usize - 1];
        let mut elems = vec![1i64];
        for &g in gaps {
            elems.push(elems.last().unwrap() + g as i64);
        }
        let witness = IntSet::new(elems).expect("small elements");
        Ok(HResult { n, h: gaps.len() as u64 + 1, witness, nodes })
    }

    /// Settles `h` and the witness for the next `N`, returning the nodes visited.
    fn advance(&self, table: &mut RulerTable) -> Result<u64, ExtremalError> {
        let n = table.witnesses.len() as u64 + 1;
        let length = (n - 1) as u32;
        let mut nodes = 0;
        let h = loop {
            if *table.spans.last().unwrap() > length {
                break table.largest_fitting(length);
            }
            let marks = table.spans.len() as u32;
            // Pair-difference count: m marks need m(m−1)/2 distinct differences.
            let floor = (marks * (marks - 1) / 2).saturating_sub(1);
            let start = table.excluded.max(floor).max(*table.spans.last().unwrap()) + 1;
            let mut found = None;
            for span in start..=length {
                let q = Query { marks, length: span, min_span: &table.spans, mirror: true, fixed_end: true, below: None };
                let out = self.pool.install(|| search::first_ruler(&q));
                nodes += out.nodes;
                if out.gaps.is_some() {
                    found = Some(span);
                    break;
                }
            }
            match found {
                Some(span) => {
                    table.spans.push(span);
                    table.excluded = span;
                }
                None => {
                    table.excluded = table.excluded.max(length);
                    break marks as u64 - 1;
                }
            }
        };
        // The lex-first witness for N is the smaller of the one for N − 1 (when
        // it has the same size) and the lex-first ruler of span exactly N − 1.
        let prev = table.witnesses.last().filter(|w| w.len() as u64 + 1 == h);
        let q = Query {
            marks: h as u32,
            length,
            min_span: &table.spans,
            mirror: false,
            fixed_end: true,
            below: prev.map(|w| w.as_slice()),
        };
        let out = self.pool.install(|| search::first_ruler(&q));
        nodes += out.nodes;
        let gaps = match (out.gaps, prev) {
            (Some(g), _) => g,
            (None, Some(p)) => p.clone(),
            (None, None) => {
                return Err(ExtremalError::Internal(format!("no witness of size {h} for N = {n}")));
            }
        };
        table.witnesses.push(gaps);
        Ok(nodes)
    }

    /// Checks `1 ≤ h(N) ≤ h(N + 1) ≤ h(N) + 1` across `range`.
    pub fn h_monotone_check(&self, range: std::ops::RangeInclusive<u64>) -> Result<MonotoneReport, ExtremalError> {
        let mut values = Vec::new();
        for n in range.clone() {
            values.push(self.h_exact(n)?.h);
        }
        let positive = values.iter().all(|&h| h >= 1);
        let monotone = values.windows(2).all(|w| w[0] <= w[1]);
        let unit_steps = values.windows(2).all(|w| w[1] <= w[0] + 1);
        Ok(MonotoneReport { start: *range.start(), values, positive, monotone, unit_steps })
    }
}

/// One-shot `h(N)` with a fresh single-worker solver.
pub fn h_exact(n: u64, cap: u64) -> Result<HResult, ExtremalError> {
    Solver::new(cap, 1)?.h_exact(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneReport {
    pub start: u64,
    pub values: Vec<u64>,
    pub positive: bool,
    pub monotone: bool,
    /// `h(N + 1) ≤ h(N) + 1`; a sanity property rather than a theorem used elsewhere.
    pub unit_steps: bool,
}

impl MonotoneReport {
    pub fn passed(&self) -> bool {
        self.positive && self.monotone && self.unit_steps
    }
}
