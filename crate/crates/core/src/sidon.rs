//! Sidon predicates at three levels (integer, modular, interval), the
//! no-wraparound lift from intervals to cyclic groups, and the exact
//! sumset / difference-set / representation identities of Sidon sets.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Largest admissible magnitude of an element; keeps `a + b` and `a - b`
/// comfortably inside `i64`.
pub const ELEMENT_LIMIT: i64 = 1 << 61;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SidonError {
    #[error("modulus must be positive, got {0}")]
    BadModulus(i64),
    #[error("element {0} exceeds the supported magnitude 2^61")]
    ElementTooLarge(i64),
    #[error("duplicate element {0}")]
    Duplicate(i64),
    #[error("set is not Sidon: {a} + {b} = {c} + {d}")]
    NotSidon { a: i64, b: i64, c: i64, d: i64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// A finite set of integers, kept sorted and duplicate-free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntSet(Vec<i64>);

impl IntSet {
    /// Sorts and deduplicates `elements`.
    pub fn new(mut elements: Vec<i64>) -> Result<Self, SidonError> {
        if let Some(&bad) = elements.iter().find(|a| a.abs() > ELEMENT_LIMIT) {
            return Err(SidonError::ElementTooLarge(bad));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(IntSet(elements))
    }

    /// Like [`IntSet::new`] but rejects repeated elements instead of merging them.
    pub fn from_distinct(elements: Vec<i64>) -> Result<Self, SidonError> {
        let len = elements.len();
        let set = Self::new(elements.clone())?;
        if set.len() != len {
            let mut seen = BTreeSet::new();
            let dup = elements.into_iter().find(|a| !seen.insert(*a)).unwrap_or_default();
            return Err(SidonError::Duplicate(dup));
        }
        Ok(set)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: i64) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn first(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }
}

impl TryFrom<Vec<i64>> for IntSet {
    type Error = SidonError;

    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        IntSet::from_distinct(v)
    }
}

impl From<IntSet> for Vec<i64> {
    fn from(s: IntSet) -> Self {
        s.0
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Integer,
    Modular,
    Interval,
}

/// Outcome of one Sidon predicate evaluation, with the witness set and any
/// counterexample.
///
/// `violation` is the first colliding quadruple `(a, b, c, d)` with
/// `a + b = c + d` (or `≡ mod M`) under a lexicographic scan of pairs
/// `a ≤ b`; `(a, b)` is the earlier pair. `outside` is the first element
/// breaking interval containment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidonCert {
    pub level: Level,
    pub set: IntSet,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<i64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outside: Option<i64>,
}

fn first_collision(set: &IntSet, key: impl Fn(i64) -> i64) -> Option<[i64; 4]> {
    let s = set.as_slice();
    let mut seen: HashMap<i64, (i64, i64)> = HashMap::with_capacity(s.len() * (s.len() + 1) / 2);
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i..] {
            if let Some(&(c, d)) = seen.get(&key(a + b)) {
                return Some([c, d, a, b]);
            }
            seen.insert(key(a + b), (a, b));
        }
    }
    None
}

/// Integer Sidon test: all sums `a + b` with `a ≤ b` are distinct.
pub fn is_sidon(set: &IntSet) -> SidonCert {
    let violation = first_collision(set, |s| s);
    SidonCert {
        level: Level::Integer,
        set: set.clone(),
        modulus: None,
        bound: None,
        verified: violation.is_none(),
        violation,
        outside: None,
    }
}

/// Sidon modulo `m`: sums of distinct unordered integer pairs are distinct residues.
pub fn is_sidon_mod(m: i64, set: &IntSet) -> Result<SidonCert, SidonError> {
    if m <= 0 {
        return Err(SidonError::BadModulus(m));
    }
    let violation = first_collision(set, |s| s.rem_euclid(m));
    Ok(SidonCert {
        level: Level::Modular,
        set: set.clone(),
        modulus: Some(m),
        bound: None,
        verified: violation.is_none(),
        violation,
        outside: None,
    })
}

/// Sidon and contained in `{1, …, n}`.
pub fn is_interval_sidon(n: i64, set: &IntSet) -> SidonCert {
    let outside = set.iter().find(|&a| a < 1 || a > n);
    let base = is_sidon(set);
    SidonCert {
        level: Level::Interval,
        bound: Some(n),
        verified: outside.is_none() && base.verified,
        outside,
        ..base
    }
}

/// Lifts an interval Sidon set in `{1, …, n}` to a Sidon set modulo any
/// `m ≥ 2n − 1`. The result is re-verified rather than assumed.
pub fn no_wraparound(set: &IntSet, n: i64, m: i64) -> Result<SidonCert, SidonError> {
    if n < 1 {
        return Err(SidonError::Precondition(format!("interval bound must be positive, got {n}")));
    }
    if m < 2 * n - 1 {
        return Err(SidonError::Precondition(format!("modulus {m} is below 2N - 1 = {}", 2 * n - 1)));
    }
    let interval = is_interval_sidon(n, set);
    if !interval.verified {
        return Err(SidonError::Precondition(format!("{set:?} is not an interval Sidon set in [1, {n}]")));
    }
    let cert = is_sidon_mod(m, set)?;
    if !cert.verified {
        return Err(SidonError::Internal(format!(
            "no-wraparound lift failed for {set} with N = {n}, M = {m}: {:?}",
            cert.violation
        )));
    }
    Ok(cert)
}

pub fn sumset(set: &IntSet) -> IntSet {
    let s = set.as_slice();
    let sums: BTreeSet<i64> = s.iter().flat_map(|&a| s.iter().map(move |&b| a + b)).collect();
    IntSet(sums.into_iter().collect())
}

pub fn diffset(set: &IntSet) -> IntSet {
    let s = set.as_slice();
    let diffs: BTreeSet<i64> = s.iter().flat_map(|&a| s.iter().map(move |&b| a - b)).collect();
    IntSet(diffs.into_iter().collect())
}

/// Number of quadruples `(a, b, c, d) ∈ A⁴` with `a + b = c + d`, counted
/// through the equivalent relation `a − c = d − b`.
pub fn additive_energy(set: &IntSet) -> u64 {
    let s = set.as_slice();
    let mut diff_count: HashMap<i64, u64> = HashMap::new();
    for &a in s {
        for &c in s {
            *diff_count.entry(a - c).or_default() += 1;
        }
    }
    diff_count.values().map(|r| r * r).sum()
}

/// The representation function `n ↦ |{(a, b) ∈ A² : a + b = n}|` on `A + A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepProfile {
    pub set: IntSet,
    pub counts: BTreeMap<i64, u64>,
}

impl RepProfile {
    pub fn max(&self) -> u64 {
        self.counts.values().copied().max().unwrap_or(0)
    }
}

pub fn rep_profile(set: &IntSet) -> RepProfile {
    let mut counts = BTreeMap::new();
    for &a in set.as_slice() {
        for &b in set.as_slice() {
            *counts.entry(a + b).or_insert(0u64) += 1;
        }
    }
    RepProfile { set: set.clone(), counts }
}

/// One line of an identity report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Human-readable statement, e.g. `|A+A| = m(m+1)/2`.
    pub statement: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    /// `None` when the identity does not apply to this cardinality.
    pub passed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub set: IntSet,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }
}

/// Evaluates every exact cardinality and representation identity that holds
/// for Sidon sets. Non-Sidon input is rejected.
pub fn check_identities(set: &IntSet) -> Result<IdentityReport, SidonError> {
    if let Some([a, b, c, d]) = is_sidon(set).violation {
        return Err(SidonError::NotSidon { a, b, c, d });
    }
    let m = set.len() as i64;
    let plus = sumset(set).len() as i64;
    let minus = diffset(set).len() as i64;
    let energy = additive_energy(set) as i64;
    let profile = rep_profile(set);
    let r_sum: i64 = profile.counts.values().map(|&r| r as i64).sum();
    let r_sq: i64 = profile.counts.values().map(|&r| (r * r) as i64).sum();
    let deficiency: i64 = profile.counts.values().map(|&r| 2 - r as i64).sum();
    let r_max = profile.max() as i64;

    let eq = |name, statement, lhs, rhs| IdentityCheck { name, statement, lhs, rhs, passed: Some(lhs == rhs) };
    let when = |cond: bool, mut c: IdentityCheck| {
        if !cond {
            c.passed = None;
        }
        c
    };
    let checks = vec![
        eq("card_add", "|A+A| = m(m+1)/2", plus, m * (m + 1) / 2),
        when(m >= 1, eq("card_sub", "|A-A| = m^2 - m + 1", minus, m * m - m + 1)),
        eq("add_energy", "E(A) = 2m^2 - m", energy, 2 * m * m - m),
        IdentityCheck { name: "repr_le_two", statement: "max r_A(n) <= 2", lhs: r_max, rhs: 2, passed: Some(r_max <= 2) },
        eq("repr_sum", "sum r_A(n) = m^2", r_sum, m * m),
        eq("repr_sq_sum", "sum r_A(n)^2 = 2m^2 - m", r_sq, 2 * m * m - m),
        eq("repr_deficiency", "sum (2 - r_A(n)) = m", deficiency, m),
        when(
            m >= 1,
            IdentityCheck { name: "card_sub_ge_card_add", statement: "|A-A| >= |A+A|", lhs: minus, rhs: plus, passed: Some(minus >= plus) },
        ),
        when(
            m >= 3,
            IdentityCheck { name: "card_sub_gt_card_add", statement: "|A-A| > |A+A|", lhs: minus, rhs: plus, passed: Some(minus > plus) },
        ),
    ];
    Ok(IdentityReport { set: set.clone(), checks })
}

/// Returns `(is Sidon, |A+A| is maximal)`; the two always agree.
pub fn sidon_iff_card_add(set: &IntSet) -> (bool, bool) {
    let m = set.len();
    let pair = (is_sidon(set).verified, sumset(set).len() == m * (m + 1) / 2);
    assert_eq!(pair.0, pair.1, "Sidon characterisation disagrees on {set}");
    pair
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn integer_predicate() {
        assert!(is_sidon(&set(&[1, 2, 4])).verified);
        let bad = is_sidon(&set(&[1, 2, 3]));
        assert!(!bad.verified);
        assert_eq!(bad.violation, Some([1, 3, 2, 2]));
        assert!(is_sidon(&set(&[])).verified);
        assert!(is_sidon(&set(&[7])).verified);
    }

    #[test]
    fn modular_predicate() {
        assert!(is_sidon_mod(7, &set(&[1, 2, 4])).unwrap().verified);
        let bad = is_sidon_mod(5, &set(&[1, 2, 4])).unwrap();
        assert_eq!(bad.violation, Some([1, 2, 4, 4]));
        assert_eq!(is_sidon_mod(0, &set(&[1])), Err(SidonError::BadModulus(0)));
        // Congruent but distinct integers collide modulo M.
        assert!(!is_sidon_mod(5, &set(&[0, 5])).unwrap().verified);
    }

    #[test]
    fn interval_predicate() {
        assert!(is_interval_sidon(4, &set(&[1, 2, 4])).verified);
        let out = is_interval_sidon(3, &set(&[1, 2, 4]));
        assert!(!out.verified);
        assert_eq!(out.outside, Some(4));
        assert_eq!(out.violation, None);
        for n in 1..20 {
            assert!(is_interval_sidon(n, &set(&[1])).verified);
        }
        assert!(!is_interval_sidon(5, &set(&[0, 1])).verified);
    }

    #[test]
    fn wraparound_lift() {
        assert!(no_wraparound(&set(&[1, 2, 4]), 4, 7).unwrap().verified);
        assert!(no_wraparound(&set(&[1, 2]), 2, 3).unwrap().verified);
        assert!(matches!(no_wraparound(&set(&[1, 2, 4]), 4, 6), Err(SidonError::Precondition(_))));
        assert!(matches!(no_wraparound(&set(&[1, 2, 3]), 3, 9), Err(SidonError::Precondition(_))));
    }

    #[test]
    fn sums_and_differences() {
        let a = set(&[1, 2, 4]);
        assert_eq!(sumset(&a).len(), 6);
        assert_eq!(diffset(&a).len(), 7);
        assert_eq!(additive_energy(&a), 15);
        let p = rep_profile(&a);
        assert_eq!(p.counts.values().sum::<u64>(), 9);
        assert_eq!(p.counts[&2], 1);
        assert_eq!(p.counts[&3], 2);
    }

    #[test]
    fn identity_reports() {
        let r = check_identities(&set(&[1, 2, 4])).unwrap();
        assert!(r.all_passed());
        assert!(r.checks.iter().all(|c| c.passed == Some(true)));

        let empty = check_identities(&set(&[])).unwrap();
        assert!(empty.all_passed());
        let skipped: Vec<_> = empty.checks.iter().filter(|c| c.passed.is_none()).map(|c| c.name).collect();
        assert_eq!(skipped, ["card_sub", "card_sub_ge_card_add", "card_sub_gt_card_add"]);

        let five = check_identities(&set(&[1, 2, 5, 10, 12])).unwrap();
        assert!(five.checks.iter().all(|c| c.passed == Some(true)));
        let sub = five.checks.iter().find(|c| c.name == "card_sub_gt_card_add").unwrap();
        assert_eq!((sub.lhs, sub.rhs), (21, 15));

        assert_eq!(check_identities(&set(&[1, 2, 3])), Err(SidonError::NotSidon { a: 1, b: 3, c: 2, d: 2 }));
    }

    #[test]
    fn card_add_characterisation() {
        assert_eq!(sidon_iff_card_add(&set(&[1, 2, 3])), (false, false));
        assert_eq!(sidon_iff_card_add(&set(&[1, 2, 4])), (true, true));
        assert_eq!(sidon_iff_card_add(&set(&[])), (true, true));
    }

    #[test]
    fn set_construction() {
        assert_eq!(set(&[4, 1, 2, 1]).as_slice(), &[1, 2, 4]);
        assert_eq!(IntSet::from_distinct(vec![1, 2, 1]), Err(SidonError::Duplicate(1)));
        assert!(IntSet::new(vec![ELEMENT_LIMIT + 1]).is_err());
        let json = serde_json::to_string(&set(&[3, 1])).unwrap();
        assert_eq!(json, "[1,3]");
        assert!(serde_json::from_str::<IntSet>("[1,1]").is_err());
    }
}
