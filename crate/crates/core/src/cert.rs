//! JSON certificates and their independent re-verification.
//!
//! Every certificate is a JSON object with a `"kind"` tag. Output is
//! canonical: keys sorted, no insignificant whitespace.

use crate::arith::prime_power;
use crate::sidon::{is_interval_sidon, is_sidon, is_sidon_mod, IntSet, Level, SidonCert};
use crate::singer::{verify_perfect_difference_set, SingerSet};
use crate::transfer::TransferResult;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    #[serde(rename = "singer")]
    Singer(SingerSet),
    #[serde(rename = "sidon-cert")]
    Sidon(SidonCert),
    #[serde(rename = "transfer")]
    Transfer(TransferResult),
}

#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Singer(_) => "singer",
            Certificate::Sidon(_) => "sidon-cert",
            Certificate::Transfer(_) => "transfer",
        }
    }

    /// Sorted-key compact JSON.
    pub fn to_canonical_json(&self) -> String {
        // `Value` objects are BTreeMaps, so a round trip through them sorts keys.
        let value = serde_json::to_value(self).expect("certificates serialize");
        serde_json::to_string(&value).expect("values serialize")
    }

    pub fn parse(text: &str) -> Result<Self, CertError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-checks every claim from scratch.
    pub fn verify(&self) -> Verdict {
        let mut v = Verdict { kind: self.kind(), problems: Vec::new() };
        match self {
            Certificate::Singer(s) => check_singer(s, &mut v),
            Certificate::Sidon(c) => check_sidon(c, &mut v),
            Certificate::Transfer(t) => check_transfer(t, &mut v),
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: &'static str,
    pub problems: Vec<String>,
}

impl Verdict {
    pub fn valid(&self) -> bool {
        self.problems.is_empty()
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.problems.push(msg.into());
    }
}

fn check_singer(s: &SingerSet, v: &mut Verdict) {
    match prime_power(s.q) {
        Some((p, k)) if p == s.p && k == s.k => {}
        _ => v.fail(format!("q = {} is not {}^{}", s.q, s.p, s.k)),
    }
    let Some(m) = s.q.checked_mul(s.q).and_then(|qq| qq.checked_add(s.q + 1)) else {
        return v.fail("q is too large");
    };
    if s.modulus != m {
        v.fail(format!("modulus {} should be q^2 + q + 1 = {m}", s.modulus));
    }
    if s.residues.len() as u64 != s.q + 1 {
        v.fail(format!("{} residues, expected q + 1 = {}", s.residues.len(), s.q + 1));
    }
    if !s.residues.windows(2).all(|w| w[0] < w[1]) {
        v.fail("residues are not strictly increasing");
    }
    match verify_perfect_difference_set(&s.residues, s.modulus) {
        Ok(r) if r.passed => {}
        Ok(r) => v.fail(format!("not a perfect difference set: residue {:?} (residue, count)", r.violation)),
        Err(e) => return v.fail(e.to_string()),
    }
    let set = IntSet::new(s.residues.iter().map(|&r| r as i64).collect());
    match set.map(|set| is_sidon_mod(s.modulus as i64, &set)) {
        Ok(Ok(c)) if c.verified => {}
        _ => v.fail("residues are not Sidon modulo the modulus"),
    }
}

fn recompute(c: &SidonCert) -> Result<SidonCert, String> {
    match c.level {
        Level::Integer => Ok(is_sidon(&c.set)),
        Level::Modular => {
            let m = c.modulus.ok_or("modular certificate without M")?;
            is_sidon_mod(m, &c.set).map_err(|e| e.to_string())
        }
        Level::Interval => Ok(is_interval_sidon(c.bound.ok_or("interval certificate without N")?, &c.set)),
    }
}

fn check_sidon(c: &SidonCert, v: &mut Verdict) {
    match recompute(c) {
        Ok(fresh) if fresh == *c => {}
        Ok(fresh) => v.fail(format!(
            "recomputed verified = {}, violation = {:?}, outside = {:?}",
            fresh.verified, fresh.violation, fresh.outside
        )),
        Err(e) => v.fail(e),
    }
}

fn check_transfer(t: &TransferResult, v: &mut Verdict) {
    let src = &t.source;
    if src.level != Level::Modular || !src.verified {
        v.fail("source must be a verified modular certificate");
    }
    check_sidon(src, v);
    let m = t.modulus();
    if m < 1 || t.n < 1 || t.n > m {
        return v.fail(format!("window length {} outside [1, {m}]", t.n));
    }
    if !(0..m).contains(&t.offset) {
        return v.fail(format!("offset {} outside [0, {m})", t.offset));
    }
    if let Some(r) = src.set.iter().find(|&r| !(0..m).contains(&r)) {
        return v.fail(format!("source residue {r} outside [0, {m})"));
    }
    let image: Vec<i64> = src
        .set
        .iter()
        .map(|x| (x - t.offset).rem_euclid(m))
        .filter(|&y| y < t.n)
        .map(|y| y + 1)
        .collect();
    let image = IntSet::new(image).expect("bounded");
    if image != t.image {
        v.fail(format!("image should be {image}"));
    }
    if t.full != (t.image.len() == src.set.len()) {
        v.fail("full flag disagrees with the image size");
    }
    if !is_interval_sidon(t.n, &t.image).verified {
        v.fail("image is not interval Sidon");
    }
}
