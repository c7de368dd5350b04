//! Singer perfect difference sets: the nonzero kernel of the trace
//! GF(q³) → GF(q), taken through a discrete logarithm modulo `q² + q + 1`.

use crate::arith::prime_power;
use crate::ff::{DlogTable, FFElement, FfError, GaloisField};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Largest `q` whose cubic extension fits the field size cap.
pub const MAX_Q: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SingerError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} exceeds the supported maximum {MAX_Q}")]
    TooLarge(u64),
    #[error("GF({p}^{d}) is not a cubic extension of a field of order {q}")]
    NotSinger { p: u64, d: u32, q: u64 },
    #[error("residue list is malformed: {0}")]
    BadResidues(String),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// A perfect difference set of size `q + 1` modulo `q² + q + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingerSet {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub modulus: u64,
    pub residues: Vec<u64>,
    /// Code of the generator used for logarithms.
    #[serde(skip)]
    pub generator: u64,
    /// Coefficients of the defining polynomial of GF(q³), lowest first.
    #[serde(skip)]
    pub field_modulus: Vec<u64>,
}

impl SingerSet {
    pub fn residues_i64(&self) -> Vec<i64> {
        self.residues.iter().map(|&r| r as i64).collect()
    }
}

/// GF(q³) with its canonical generator and log table.
#[derive(Debug)]
pub struct SingerField {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub field: GaloisField,
    pub generator: FFElement,
    pub logs: DlogTable,
}

impl SingerField {
    pub fn new(q: u64) -> Result<Self, SingerError> {
        let (p, k) = prime_power(q).ok_or(SingerError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(SingerError::TooLarge(q));
        }
        let field = GaloisField::new(p, 3 * k)?;
        let generator = field.find_generator();
        let logs = DlogTable::new(&field, &generator)?;
        Ok(SingerField { q, p, k, field, generator, logs })
    }

    /// `q² + q + 1`.
    pub fn modulus(&self) -> u64 {
        self.q * self.q + self.q + 1
    }

    pub fn log_mod(&self, a: &FFElement) -> Result<u64, SingerError> {
        Ok(self.logs.log(&self.field, a)? % self.modulus())
    }
}

/// Shared per-`q` field and set caches; entries are immutable once inserted.
fn field_cache() -> &'static Mutex<HashMap<u64, Arc<SingerField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<SingerField>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn set_cache() -> &'static Mutex<HashMap<u64, Arc<SingerSet>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<SingerSet>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn singer_field(q: u64) -> Result<Arc<SingerField>, SingerError> {
    if let Some(f) = field_cache().lock().expect("cache poisoned").get(&q) {
        return Ok(f.clone());
    }
    let f = Arc::new(SingerField::new(q)?);
    Ok(field_cache().lock().expect("cache poisoned").entry(q).or_insert(f).clone())
}

/// The GF(p)-matrix of `a ↦ Tr(a)` in the polynomial basis; column `i` is
/// the trace of `x^i`.
fn trace_matrix(field: &GaloisField, q: u64) -> Result<Vec<Vec<u64>>, SingerError> {
    let d = field.degree() as usize;
    let mut cols = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        cols.push(field.rel_trace(&field.element(e)?, q)?.coeffs().to_vec());
    }
    Ok((0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect())
}

/// Null space of a square matrix over GF(p), as basis vectors.
fn null_space(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, r);
        let inv = inv_mod(m[row][col], p);
        for v in m[row].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let c = m[r][col];
                for j in 0..n {
                    m[r][j] = (m[r][j] + p - c * m[row][j] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// The `q² − 1` nonzero elements of the trace kernel, in code order.
/// The kernel is spanned from a null-space basis of the (linear) trace map.
pub fn trace_kernel_nonzero(field: &GaloisField, q: u64) -> Result<Vec<FFElement>, SingerError> {
    let (p, d) = (field.p(), field.degree());
    let not_singer = SingerError::NotSinger { p, d, q };
    let k = field.subfield_degree(q).map_err(|_| not_singer.clone())?;
    if d != 3 * k {
        return Err(not_singer);
    }
    let basis = null_space(trace_matrix(field, q)?, p);
    if basis.len() != 2 * k as usize {
        return Err(SingerError::Internal(format!("trace kernel has dimension {} over GF({p})", basis.len())));
    }
    let mut out = Vec::with_capacity((q * q - 1) as usize);
    for mut idx in 1..q * q {
        let mut v = vec![0u64; d as usize];
        for b in &basis {
            let c = idx % p;
            idx /= p;
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = (*vi + c * bi) % p;
            }
        }
        out.push(field.element(v)?);
    }
    out.sort_by_key(FFElement::code);
    Ok(out)
}

/// Discrete logs mod `M` of every nonzero kernel element, keyed by residue.
pub fn orbit_multiplicities(q: u64) -> Result<BTreeMap<u64, u64>, SingerError> {
    let sf = singer_field(q)?;
    let mut counts = BTreeMap::new();
    for u in trace_kernel_nonzero(&sf.field, q)? {
        *counts.entry(sf.log_mod(&u)?).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Builds (or fetches from the cache) the canonical Singer set for `q`.
pub fn build_singer_set(q: u64) -> Result<Arc<SingerSet>, SingerError> {
    if let Some(s) = set_cache().lock().expect("cache poisoned").get(&q) {
        return Ok(s.clone());
    }
    let sf = singer_field(q)?;
    let counts = orbit_multiplicities(q)?;
    if counts.len() as u64 != q + 1 {
        return Err(SingerError::Internal(format!("{} residues for q = {q}", counts.len())));
    }
    if let Some((r, c)) = counts.iter().find(|(_, &c)| c != q - 1) {
        return Err(SingerError::Internal(format!("residue {r} arises {c} times, expected {}", q - 1)));
    }
    let set = SingerSet {
        p: sf.p,
        k: sf.k,
        q,
        modulus: sf.modulus(),
        residues: counts.into_keys().collect(),
        generator: sf.generator.code(),
        field_modulus: sf.field.modulus().coeffs.clone(),
    };
    let report = verify_perfect_difference_set(&set.residues, set.modulus)?;
    if !report.passed {
        return Err(SingerError::Internal(format!("q = {q}: not a perfect difference set ({report:?})")));
    }
    let set = Arc::new(set);
    Ok(set_cache().lock().expect("cache poisoned").entry(q).or_insert(set).clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdsReport {
    pub modulus: u64,
    pub size: usize,
    pub passed: bool,
    /// Smallest nonzero residue not represented exactly once, with its count.
    pub violation: Option<(u64, u64)>,
}

/// Counts the ordered differences of `residues` mod `m` and checks that
/// each nonzero residue occurs exactly once.
pub fn verify_perfect_difference_set(residues: &[u64], m: u64) -> Result<PdsReport, SingerError> {
    if m == 0 {
        return Err(SingerError::BadResidues("modulus 0".into()));
    }
    let mut sorted = residues.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(SingerError::BadResidues(format!("{} repeated", w[0])));
    }
    if let Some(r) = sorted.iter().find(|&&r| r >= m) {
        return Err(SingerError::BadResidues(format!("{r} not below {m}")));
    }
    let mut counts = vec![0u64; m as usize];
    for &a in residues {
        for &b in residues {
            if a != b {
                counts[((a + m - b) % m) as usize] += 1;
            }
        }
    }
    let violation = (1..m).find(|&r| counts[r as usize] != 1).map(|r| (r, counts[r as usize]));
    Ok(PdsReport { modulus: m, size: residues.len(), passed: violation.is_none(), violation })
}

#[derive(Debug, Clone)]
pub struct ProjectiveReps {
    pub basis: [FFElement; 2],
    /// `(t, v₁ + t·v₂)` for `t ∈ GF(q)` in code order, then `(None, v₂)`.
    pub reps: Vec<(Option<FFElement>, FFElement)>,
}

/// One kernel element per GF(q)-line: `v₁ + t·v₂` and `v₂`, where `v₁` is
/// the smallest nonzero kernel element and `v₂` the smallest not
/// proportional to it.
pub fn projective_representatives(q: u64) -> Result<ProjectiveReps, SingerError> {
    let sf = singer_field(q)?;
    let f = &sf.field;
    let kernel = trace_kernel_nonzero(f, q)?;
    let scalars = f.subfield(q)?;
    let v1 = kernel[0].clone();
    let line: Vec<FFElement> = scalars.iter().map(|s| f.mul(s, &v1)).collect::<Result<_, _>>()?;
    let v2 = kernel
        .iter()
        .find(|u| !line.contains(u))
        .cloned()
        .ok_or_else(|| SingerError::Internal("kernel is one-dimensional".into()))?;
    let mut reps = Vec::with_capacity(q as usize + 1);
    for t in &scalars {
        reps.push((Some(t.clone()), f.add(&v1, &f.mul(t, &v2)?)?));
    }
    reps.push((None, v2.clone()));
    for (i, (_, a)) in reps.iter().enumerate() {
        if a.is_zero() || !f.rel_trace(a, q)?.is_zero() {
            return Err(SingerError::Internal("representative outside the nonzero kernel".into()));
        }
        for (_, b) in &reps[..i] {
            if f.is_in_subfield(&f.mul(a, &f.inv(b)?)?, q)? {
                return Err(SingerError::Internal("proportional representatives".into()));
            }
        }
    }
    Ok(ProjectiveReps { basis: [v1, v2], reps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub q: u64,
    /// Quadruples `(u, v, w, x)` of nonzero kernel elements with
    /// `u·v = α·w·x` for some nonzero `α ∈ GF(q)`.
    pub quadruples: u64,
    /// Those whose classes `{[u], [v]}` and `{[w], [x]}` differ.
    pub violations: u64,
}

/// Exhaustive check that a product collision up to scalars forces the
/// classes mod `q² + q + 1` to agree as unordered pairs.
pub fn quotient_collision_check(q: u64) -> Result<CollisionReport, SingerError> {
    let sf = singer_field(q)?;
    let f = &sf.field;
    let kernel = trace_kernel_nonzero(f, q)?;
    let class: Vec<u64> = kernel.iter().map(|u| sf.log_mod(u)).collect::<Result<_, _>>()?;
    let scalars: Vec<FFElement> = f.subfield(q)?.into_iter().filter(|s| !s.is_zero()).collect();
    let mut by_product: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (i, w) in kernel.iter().enumerate() {
        for (j, x) in kernel.iter().enumerate() {
            let wx = f.mul(w, x)?;
            for a in &scalars {
                by_product.entry(f.mul(a, &wx)?.code()).or_default().push((i, j));
            }
        }
    }
    let unordered = |a: u64, b: u64| (a.min(b), a.max(b));
    let mut report = CollisionReport { q, quadruples: 0, violations: 0 };
    for (i, u) in kernel.iter().enumerate() {
        for (j, v) in kernel.iter().enumerate() {
            let Some(hits) = by_product.get(&f.mul(u, v)?.code()) else { continue };
            let lhs = unordered(class[i], class[j]);
            for &(w, x) in hits {
                report.quadruples += 1;
                if unordered(class[w], class[x]) != lhs {
                    report.violations += 1;
                }
            }
        }
    }
    Ok(report)
}
