//! Discrete logarithms by baby-step giant-step.

use super::{FFElement, FfError, FieldId, GaloisField};
use std::collections::HashMap;

/// Baby-step giant-step tables for logarithms to a fixed base. Built once,
/// then read-only, so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct DlogTable {
    field: FieldId,
    base: FFElement,
    group: u64,
    step: u64,
    /// Code of `g^j` to `j`, for `j < step`.
    baby: HashMap<u64, u64>,
    /// `g^(−step)`.
    giant: FFElement,
}

impl DlogTable {
    pub fn new(field: &GaloisField, g: &FFElement) -> Result<Self, FfError> {
        if g.field() != field.id() {
            return Err(FfError::MixedFields);
        }
        if g.is_zero() {
            return Err(FfError::ZeroLog);
        }
        let group = field.order() - 1;
        let step = crate::arith::isqrt(group - 1) + 1;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut x = field.one();
        for j in 0..step {
            baby.entry(x.code()).or_insert(j);
            x = field.mul_unchecked(&x, g);
        }
        let giant = field.inv(&field.pow_unchecked(g, step))?;
        Ok(DlogTable { field: field.id(), base: g.clone(), group, step, baby, giant })
    }

    pub fn base(&self) -> &FFElement {
        &self.base
    }

    /// The least `e ≥ 0` with `g^e = a`; always below `p^d − 1` when `g` is
    /// a generator.
    pub fn log(&self, field: &GaloisField, a: &FFElement) -> Result<u64, FfError> {
        if field.id() != self.field || a.field() != self.field {
            return Err(FfError::MixedFields);
        }
        if a.is_zero() {
            return Err(FfError::ZeroLog);
        }
        let mut y = a.clone();
        for i in 0..=self.group / self.step {
            if let Some(&j) = self.baby.get(&y.code()) {
                return Ok(i * self.step + j);
            }
            y = field.mul_unchecked(&y, &self.giant);
        }
        Err(FfError::NotInGroup)
    }
}
