//! Dense polynomials over the prime field GF(p), lowest degree first.

use super::FfError;
use crate::arith::{factorize, is_prime};
use serde::Serialize;

/// A polynomial over GF(p). Coefficients are reduced and the vector carries
/// no trailing zeros, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl PrimePoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        trim(&mut coeffs);
        PrimePoly { p, coeffs }
    }

    /// The monic polynomial of degree `d` whose lower coefficients are the
    /// base-`p` digits of `code`.
    pub fn monic_from_code(p: u64, d: u32, mut code: u64) -> Self {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            coeffs.push(code % p);
            code /= p;
        }
        coeffs.push(1);
        PrimePoly { p, coeffs }
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `Σ cᵢ pⁱ` over the coefficients below the leading one.
    pub fn lower_code(&self) -> u64 {
        let d = self.coeffs.len().saturating_sub(1);
        self.coeffs[..d].iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) if use_exhaustive(self.p, d as u32) => is_irreducible_exhaustive(self),
            Some(_) => is_irreducible_rabin(self),
        }
    }
}

impl std::fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(c: u64, p: u64) -> u64 {
    pow_mod(c, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `a mod m` for nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mc % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `base^(p^j) mod m` by `j` successive p-th powers.
fn frobenius_mod(base: &[u64], j: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut x = rem(base, m, p);
    for _ in 0..j {
        x = pow_poly_mod(&x, p, m, p);
    }
    x
}

fn pow_poly_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    result
}

fn use_exhaustive(p: u64, d: u32) -> bool {
    d <= 4 && (p as u128).pow(d) <= 1 << 20
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1..=d/2`.
pub fn is_irreducible_exhaustive(f: &PrimePoly) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    let p = f.p;
    for k in 1..=d / 2 {
        let count = p.pow(k as u32);
        for code in 0..count {
            let g = PrimePoly::monic_from_code(p, k as u32, code);
            if rem(&f.coeffs, &g.coeffs, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Rabin's test: `x^(p^d) ≡ x (mod f)` and `gcd(x^(p^(d/ℓ)) − x, f) = 1`
/// for every prime `ℓ | d`.
pub fn is_irreducible_rabin(f: &PrimePoly) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    let p = f.p;
    let x = [0, 1];
    let xr = rem(&x, &f.coeffs, p);
    if frobenius_mod(&x, d as u32, &f.coeffs, p) != xr {
        return false;
    }
    factorize(d as u64).into_iter().all(|(l, _)| {
        let h = frobenius_mod(&x, (d as u64 / l) as u32, &f.coeffs, p);
        let g = gcd(&sub(&h, &x, p), &f.coeffs, p);
        g.len() == 1
    })
}

/// The monic irreducible of degree `d` over GF(p) with the smallest lower
/// coefficient code.
pub fn find_irreducible(p: u64, d: u32) -> Result<PrimePoly, FfError> {
    if !is_prime(p) {
        return Err(FfError::NotPrime(p));
    }
    if d == 0 {
        return Err(FfError::BadDegree(d));
    }
    super::check_size(p, d)?;
    let count = p.pow(d);
    (0..count)
        .map(|code| PrimePoly::monic_from_code(p, d, code))
        .find(PrimePoly::is_irreducible)
        .ok_or_else(|| FfError::Internal(format!("no irreducible of degree {d} over GF({p})")))
}
