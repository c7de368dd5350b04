//! Field elements and arithmetic in GF(p^d), polynomial basis.

use super::poly::{self, PrimePoly};
use super::{check_size, FfError};
use crate::arith::{factorize, is_prime};
use serde::Serialize;

/// Identifies a field by its characteristic, degree and modulus, so two
/// independently built copies of the same field interoperate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldId {
    pub p: u64,
    pub d: u32,
    pub modulus_code: u64,
}

/// An element of GF(p^d): `d` coefficients in `[0, p)`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFElement {
    field: FieldId,
    coeffs: Vec<u64>,
}

impl FFElement {
    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `Σ cᵢ pⁱ`; the total order used for every canonical choice.
    pub fn code(&self) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * self.field.p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    id: FieldId,
    order: u64,
    modulus: PrimePoly,
}

impl GaloisField {
    /// GF(p^d) with the canonical modulus.
    pub fn new(p: u64, d: u32) -> Result<Self, FfError> {
        let modulus = poly::find_irreducible(p, d)?;
        Self::with_modulus(modulus)
    }

    pub fn with_modulus(modulus: PrimePoly) -> Result<Self, FfError> {
        let p = modulus.p;
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        let d = match modulus.degree() {
            Some(d) if d >= 1 && modulus.coeffs[d] == 1 => d as u32,
            _ => return Err(FfError::BadModulus(modulus.to_string())),
        };
        let order = check_size(p, d)?;
        if !modulus.is_irreducible() {
            return Err(FfError::BadModulus(modulus.to_string()));
        }
        let id = FieldId { p, d, modulus_code: modulus.lower_code() };
        Ok(GaloisField { id, order, modulus })
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn p(&self) -> u64 {
        self.id.p
    }

    pub fn degree(&self) -> u32 {
        self.id.d
    }

    /// `p^d`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &PrimePoly {
        &self.modulus
    }

    fn raw(&self, coeffs: Vec<u64>) -> FFElement {
        FFElement { field: self.id, coeffs }
    }

    pub fn zero(&self) -> FFElement {
        self.raw(vec![0; self.id.d as usize])
    }

    pub fn one(&self) -> FFElement {
        self.scalar(1)
    }

    /// The prime-field element `c mod p`.
    pub fn scalar(&self, c: u64) -> FFElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.id.p;
        e
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FFElement, FfError> {
        if coeffs.len() != self.id.d as usize {
            return Err(FfError::BadElement(format!("expected {} coefficients, got {}", self.id.d, coeffs.len())));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.id.p) {
            return Err(FfError::BadElement(format!("coefficient {c} not reduced mod {}", self.id.p)));
        }
        Ok(self.raw(coeffs))
    }

    /// Inverse of [`FFElement::code`].
    pub fn decode(&self, mut code: u64) -> Result<FFElement, FfError> {
        if code >= self.order {
            return Err(FfError::BadElement(format!("code {code} is not below {}", self.order)));
        }
        let mut coeffs = Vec::with_capacity(self.id.d as usize);
        for _ in 0..self.id.d {
            coeffs.push(code % self.id.p);
            code /= self.id.p;
        }
        Ok(self.raw(coeffs))
    }

    /// Every element, in code order.
    pub fn elements(&self) -> impl Iterator<Item = FFElement> + '_ {
        (0..self.order).map(|c| self.decode(c).expect("code in range"))
    }

    fn own(&self, a: &FFElement) -> Result<(), FfError> {
        if a.field == self.id {
            Ok(())
        } else {
            Err(FfError::MixedFields)
        }
    }

    pub fn add(&self, a: &FFElement, b: &FFElement) -> Result<FFElement, FfError> {
        self.own(a)?;
        self.own(b)?;
        let p = self.id.p;
        Ok(self.raw(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % p).collect()))
    }

    pub fn sub(&self, a: &FFElement, b: &FFElement) -> Result<FFElement, FfError> {
        self.own(a)?;
        self.own(b)?;
        let p = self.id.p;
        Ok(self.raw(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + p - y) % p).collect()))
    }

    pub fn neg(&self, a: &FFElement) -> Result<FFElement, FfError> {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FFElement, b: &FFElement) -> Result<FFElement, FfError> {
        self.own(a)?;
        self.own(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &FFElement, b: &FFElement) -> FFElement {
        let p = self.id.p;
        let d = self.id.d as usize;
        let m = &self.modulus.coeffs;
        let mut out = vec![0u64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        // The modulus is monic: x^d ≡ −Σ mⱼ xʲ.
        for i in (d..out.len()).rev() {
            let c = out[i];
            if c == 0 {
                continue;
            }
            for (j, &mj) in m[..d].iter().enumerate() {
                let k = i - d + j;
                out[k] = (out[k] + (p - c) * mj) % p;
            }
        }
        out.truncate(d);
        self.raw(out)
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    pub fn inv(&self, a: &FFElement) -> Result<FFElement, FfError> {
        self.own(a)?;
        if a.is_zero() {
            return Err(FfError::ZeroInverse);
        }
        let p = self.id.p;
        let (mut r0, mut r1) = (self.modulus.coeffs.clone(), a.coeffs.clone());
        poly::trim(&mut r1);
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while r1.len() > 1 {
            let (quot, r) = divmod(&r0, &r1, p);
            let s = poly::sub(&s0, &poly::mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant c with s1·a ≡ c.
        let c_inv = poly::inv_mod(r1[0], p);
        let mut coeffs: Vec<u64> = s1.iter().map(|&s| s * c_inv % p).collect();
        coeffs.resize(self.id.d as usize, 0);
        let inv = self.raw(coeffs);
        debug_assert_eq!(self.mul_unchecked(a, &inv), self.one());
        Ok(inv)
    }

    /// `a^e`; for nonzero `a` the exponent is reduced mod `p^d − 1`, and
    /// `0^0 = 1`.
    pub fn pow(&self, a: &FFElement, e: u64) -> Result<FFElement, FfError> {
        self.own(a)?;
        Ok(self.pow_unchecked(a, e))
    }

    pub(crate) fn pow_unchecked(&self, a: &FFElement, e: u64) -> FFElement {
        if a.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let mut e = e % (self.order - 1);
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_unchecked(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        result
    }

    /// `a^(p^e)` by `e` successive p-th powers.
    pub fn frobenius_pow(&self, a: &FFElement, e: u32) -> Result<FFElement, FfError> {
        self.own(a)?;
        let mut x = a.clone();
        for _ in 0..e {
            x = self.pow_unchecked(&x, self.id.p);
        }
        Ok(x)
    }

    /// `k` with `q = p^k` and `k | d`.
    pub fn subfield_degree(&self, q: u64) -> Result<u32, FfError> {
        let bad = FfError::BadSubfield { q, p: self.id.p, d: self.id.d };
        let mut k = 0;
        let mut x = 1u64;
        while x < q {
            x = x.checked_mul(self.id.p).ok_or(bad.clone())?;
            k += 1;
        }
        if x != q || k == 0 || self.id.d % k != 0 {
            return Err(bad);
        }
        Ok(k)
    }

    /// The trace to GF(q): `Σ a^(q^i)` for `i < d/k`, which for the cubic
    /// extension is `a + a^q + a^(q²)`.
    pub fn rel_trace(&self, a: &FFElement, q: u64) -> Result<FFElement, FfError> {
        self.own(a)?;
        let k = self.subfield_degree(q)?;
        let mut term = a.clone();
        let mut sum = a.clone();
        for _ in 1..self.id.d / k {
            term = self.pow_unchecked(&term, q);
            sum = self.add(&sum, &term)?;
        }
        Ok(sum)
    }

    /// Whether `a^q = a`.
    pub fn is_in_subfield(&self, a: &FFElement, q: u64) -> Result<bool, FfError> {
        self.own(a)?;
        self.subfield_degree(q)?;
        Ok(self.pow_unchecked(a, q) == *a)
    }

    /// The elements of the subfield of order `q`, in code order.
    pub fn subfield(&self, q: u64) -> Result<Vec<FFElement>, FfError> {
        self.subfield_degree(q)?;
        let mut out = vec![self.zero()];
        if q > 1 {
            // The nonzero part is the cyclic group generated by g^((p^d−1)/(q−1)).
            let g = self.find_generator();
            let h = self.pow_unchecked(&g, (self.order - 1) / (q - 1));
            let mut x = self.one();
            for _ in 0..q - 1 {
                out.push(x.clone());
                x = self.mul_unchecked(&x, &h);
            }
        }
        out.sort_by_key(FFElement::code);
        Ok(out)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: &FFElement) -> Result<u64, FfError> {
        self.own(a)?;
        if a.is_zero() {
            return Err(FfError::ZeroLog);
        }
        let mut ord = self.order - 1;
        for (l, _) in factorize(self.order - 1) {
            while ord % l == 0 && self.pow_unchecked(a, ord / l) == self.one() {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// The primitive element with the smallest code.
    pub fn find_generator(&self) -> FFElement {
        let n = self.order - 1;
        let primes: Vec<u64> = factorize(n).into_iter().map(|(l, _)| l).collect();
        let one = self.one();
        (1..self.order)
            .map(|c| self.decode(c).expect("code in range"))
            .find(|g| primes.iter().all(|l| self.pow_unchecked(g, n / l) != one))
            .expect("the multiplicative group is cyclic")
    }

    /// `log_g a` by baby-step giant-step. Builds a fresh table; use
    /// [`super::DlogTable`] for repeated queries.
    pub fn discrete_log(&self, g: &FFElement, a: &FFElement) -> Result<u64, FfError> {
        super::DlogTable::new(self, g)?.log(self, a)
    }
}

/// Quotient and remainder of polynomials over GF(p), `b` nonzero.
fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    poly::trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = poly::inv_mod(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
        }
        poly::trim(&mut r);
    }
    poly::trim(&mut q);
    (q, r)
}
