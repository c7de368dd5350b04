use sidonlab::ff::GaloisField;
use sidonlab::sidon::{is_sidon_mod, IntSet};
use sidonlab::singer::*;

/// Independent difference-count oracle.
fn is_pds(residues: &[u64], m: u64) -> bool {
    let mut seen = vec![0; m as usize];
    for &a in residues {
        for &b in residues {
            if a != b {
                seen[((a + m - b) % m) as usize] += 1;
            }
        }
    }
    seen[1..].iter().all(|&c| c == 1)
}

#[test]
fn family_is_perfect_and_sidon() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64] {
        let s = build_singer_set(q).unwrap();
        let m = q * q + q + 1;
        assert_eq!(s.modulus, m);
        assert_eq!(s.residues.len() as u64, q + 1);
        assert!(s.residues.windows(2).all(|w| w[0] < w[1]));
        assert_eq!((q + 1) * q, m - 1);
        assert!(is_pds(&s.residues, m), "q = {q}");
        assert!(verify_perfect_difference_set(&s.residues, m).unwrap().passed);
        let set = IntSet::new(s.residues_i64()).unwrap();
        assert!(is_sidon_mod(m as i64, &set).unwrap().verified);
    }
}

#[test]
fn known_small_sets() {
    assert!(is_pds(&[1, 2, 4], 7));
    assert!(verify_perfect_difference_set(&build_singer_set(8).unwrap().residues, 73).unwrap().passed);
}

#[test]
fn kernel_matches_direct_trace() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
        let sf = singer_field(q).unwrap();
        let f = &sf.field;
        let direct: Vec<_> = f
            .elements()
            .filter(|a| !a.is_zero())
            .filter(|a| {
                // a + a^q + a^(q²) without the library trace.
                let a1 = f.pow(a, q).unwrap();
                let a2 = f.pow(&a1, q).unwrap();
                f.add(&f.add(a, &a1).unwrap(), &a2).unwrap().is_zero()
            })
            .collect();
        assert_eq!(direct.len() as u64, q * q - 1);
        assert_eq!(trace_kernel_nonzero(f, q).unwrap(), direct, "q = {q}");
    }
}

#[test]
fn orbit_multiplicity() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
        let counts = orbit_multiplicities(q).unwrap();
        assert_eq!(counts.len() as u64, q + 1);
        assert!(counts.values().all(|&c| c == q - 1), "q = {q}");
    }
}

#[test]
fn representatives_agree_with_orbits() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let sf = singer_field(q).unwrap();
        let reps = projective_representatives(q).unwrap();
        assert_eq!(reps.reps.len() as u64, q + 1);
        let mut logs: Vec<u64> = reps.reps.iter().map(|(_, r)| sf.log_mod(r).unwrap()).collect();
        logs.sort_unstable();
        assert_eq!(logs, build_singer_set(q).unwrap().residues, "q = {q}");
    }
}

#[test]
fn collisions_degenerate() {
    for q in [2u64, 3, 4, 5, 7, 8] {
        let r = quotient_collision_check(q).unwrap();
        assert!(r.quadruples > 0);
        assert_eq!(r.violations, 0, "q = {q}");
    }
}

#[test]
fn deterministic() {
    let a = SingerField::new(9).unwrap();
    let b = SingerField::new(9).unwrap();
    assert_eq!(a.generator, b.generator);
    assert_eq!(a.field.modulus(), b.field.modulus());
    let g = GaloisField::new(3, 6).unwrap();
    assert_eq!(g.find_generator(), a.generator);
}

#[test]
fn json_shape() {
    let s = build_singer_set(2).unwrap();
    let v = serde_json::to_value(&*s).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["k", "modulus", "p", "q", "residues"]);
}
