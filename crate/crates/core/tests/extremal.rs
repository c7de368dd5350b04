use sidonlab::arith::isqrt;
use sidonlab::extremal::*;
use sidonlab::sidon::{check_identities, is_interval_sidon};
use std::collections::HashSet;

/// Plain depth-first enumeration of Sidon subsets of `{1, …, n}` in
/// lexicographic order; returns the maximum size and the first set reaching it.
fn naive_h(n: i64) -> (usize, Vec<i64>) {
    fn go(n: i64, next: i64, cur: &mut Vec<i64>, diffs: &mut HashSet<i64>, best: &mut (usize, Vec<i64>)) {
        if cur.len() > best.0 {
            *best = (cur.len(), cur.clone());
        }
        for x in next..=n {
            let new: Vec<i64> = cur.iter().map(|&a| x - a).collect();
            if new.iter().any(|d| diffs.contains(d)) {
                continue;
            }
            diffs.extend(&new);
            cur.push(x);
            go(n, x + 1, cur, diffs, best);
            cur.pop();
            for d in &new {
                diffs.remove(d);
            }
        }
    }
    let mut best = (0, Vec::new());
    go(n, 1, &mut Vec::new(), &mut HashSet::new(), &mut best);
    best
}

/// Every subset of `{1, …, n}`, checked pairwise.
fn powerset_h(n: u32) -> (usize, Vec<i64>) {
    let mut best: (usize, Vec<i64>) = (0, Vec::new());
    for mask in 0u32..1 << n {
        let elems: Vec<i64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i as i64 + 1).collect();
        let mut seen = HashSet::new();
        let ok = (0..elems.len()).all(|i| (i + 1..elems.len()).all(|j| seen.insert(elems[j] - elems[i])));
        if ok && (elems.len() > best.0 || (elems.len() == best.0 && elems < best.1)) {
            best = (elems.len(), elems);
        }
    }
    best
}

#[test]
fn agrees_with_naive_enumeration_up_to_40() {
    let solver = Solver::new(DEFAULT_CAP, 1).unwrap();
    for n in 1..=40 {
        let r = solver.h_exact(n).unwrap();
        let (h, w) = naive_h(n as i64);
        assert_eq!((r.h as usize, r.witness.as_slice()), (h, w.as_slice()), "N = {n}");
    }
}

#[test]
fn agrees_with_powerset_up_to_18() {
    for n in 1..=18u32 {
        let r = h_exact(n as u64, DEFAULT_CAP).unwrap();
        let (h, w) = powerset_h(n);
        assert_eq!((r.h as usize, r.witness.as_slice()), (h, w.as_slice()), "N = {n}");
    }
}

#[test]
fn small_examples() {
    let s = Solver::new(DEFAULT_CAP, 1).unwrap();
    assert_eq!(s.h_exact(1).unwrap().witness.as_slice(), &[1]);
    assert_eq!(s.h_exact(3).unwrap().witness.as_slice(), &[1, 2]);
    assert_eq!(s.h_exact(7).unwrap().witness.as_slice(), &[1, 2, 5, 7]);
    assert!(matches!(s.h_exact(DEFAULT_CAP + 1), Err(ExtremalError::OutOfRange { .. })));
    let row = bounds_row(&s, 5).unwrap();
    assert_eq!((row.lower, row.h, row.upper_pd, row.upper_johnson), (1, 3, 4, None));
    assert_eq!(bounds_row(&s, 16).unwrap().upper_johnson, Some(8));
    assert_eq!(johnson_upper(100).unwrap(), 15);
    assert_eq!((pair_diff_upper(1), pair_diff_upper(50)), (2, 11));
    assert!(partial_check(5, 3) && partial_check(7, 4));
}

#[test]
fn witnesses_pass_every_check() {
    let solver = Solver::new(DEFAULT_CAP, 1).unwrap();
    for n in 1..=80u64 {
        let r = solver.h_exact(n).unwrap();
        let w = &r.witness;
        assert!(is_interval_sidon(n as i64, w).verified);
        assert!(check_identities(w).unwrap().all_passed());
        assert!(cross_difference_check(w, n).unwrap().passed());
        assert!(shift_intersection_check(w).unwrap().passed());
        if n >= 5 {
            let row = bounds_row(&solver, n).unwrap();
            assert!(row.all_ok(), "{row:?}");
        }
    }
    assert!(solver.h_monotone_check(1..=80).unwrap().passed());
}

#[test]
fn independent_of_worker_count() {
    let reference: Vec<_> = {
        let s = Solver::new(DEFAULT_CAP, 1).unwrap();
        (1..=75).map(|n| s.h_exact(n).unwrap()).collect()
    };
    for workers in [2, 8] {
        let s = Solver::new(DEFAULT_CAP, workers).unwrap();
        for r in &reference {
            let got = s.h_exact(r.n).unwrap();
            assert_eq!((got.h, &got.witness), (r.h, &r.witness), "N = {}, {workers} workers", r.n);
        }
    }
}

#[test]
fn pair_difference_bound_fits_partial_check() {
    for n in 5..=1_000_000u64 {
        let u = isqrt(2 * n) + 1;
        assert!(partial_check(n, u), "N = {n}");
    }
}

#[test]
fn bertrand_lower_small_range() {
    for n in 5..=2000u64 {
        let w = bertrand_lower(n).unwrap();
        assert!(w.witness.len() as u64 > lower_bound(n));
        assert!(is_interval_sidon(n as i64, &w.witness).verified);
        assert!(check_identities(&w.witness).unwrap().all_passed());
    }
    assert!(bertrand_lower(4).is_err());
}
