//! Integer-valued functions on `V^k`.
//!
//! The same type carries OA multiplicities (non-negative) and signed trade
//! vectors. Storage is sparse; absent tuples are zero and zero entries are
//! never stored.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::tuples::{checked_pow, KTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyVector {
    v: u32,
    k: usize,
    entries: BTreeMap<KTuple, BigInt>,
}

impl FrequencyVector {
    pub fn zero(v: u32, k: usize) -> Result<Self> {
        // validates (v, k)
        KTuple::unrank(0, v, k)?;
        Ok(FrequencyVector {
            v,
            k,
            entries: BTreeMap::new(),
        })
    }

    /// Builds a vector from `(tuple, coefficient)` pairs; duplicates are summed.
    pub fn from_terms<C: Into<BigInt>>(
        v: u32,
        k: usize,
        terms: impl IntoIterator<Item = (KTuple, C)>,
    ) -> Result<Self> {
        let mut out = FrequencyVector::zero(v, k)?;
        for (x, c) in terms {
            out.add_at(&x, c.into())?;
        }
        Ok(out)
    }

    /// Inverse of [`FrequencyVector::to_dense`].
    pub fn from_dense(v: u32, k: usize, dense: &[BigInt]) -> Result<Self> {
        let n = checked_pow(v, k).unwrap_or(usize::MAX);
        if dense.len() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n} entries"),
                found: format!("{} entries", dense.len()),
            });
        }
        let mut out = FrequencyVector::zero(v, k)?;
        for (i, c) in dense.iter().enumerate() {
            if !c.is_zero() {
                out.entries.insert(KTuple::unrank(i, v, k)?, c.clone());
            }
        }
        Ok(out)
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Length of the dense form, `v^k`.
    pub fn dimension(&self) -> usize {
        checked_pow(self.v, self.k).expect("validated at construction")
    }

    fn check_tuple(&self, x: &KTuple) -> Result<()> {
        if x.v() != self.v || x.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: format!("tuple over v={} with k={}", self.v, self.k),
                found: format!("tuple over v={} with k={}", x.v(), x.k()),
            });
        }
        Ok(())
    }

    pub fn add_at(&mut self, x: &KTuple, c: BigInt) -> Result<()> {
        self.check_tuple(x)?;
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry(x.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(x);
        }
        Ok(())
    }

    pub fn get(&self, x: &KTuple) -> BigInt {
        self.entries.get(x).cloned().unwrap_or_default()
    }

    /// Nonzero entries in lexicographic tuple order.
    pub fn iter(&self) -> impl Iterator<Item = (&KTuple, &BigInt)> {
        self.entries.iter()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_non_negative(&self) -> bool {
        self.entries.values().all(|c| !c.is_negative())
    }

    /// Sum of all entries.
    pub fn total(&self) -> BigInt {
        self.entries.values().sum()
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut dense = vec![BigInt::zero(); self.dimension()];
        for (x, c) in &self.entries {
            dense[x.rank()] = c.clone();
        }
        dense
    }

    fn check_compatible(&self, other: &FrequencyVector) -> Result<()> {
        if self.v != other.v || self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: format!("v={} k={}", self.v, self.k),
                found: format!("v={} k={}", other.v, other.k),
            });
        }
        Ok(())
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &FrequencyVector, scale: &BigInt) -> Result<()> {
        self.check_compatible(other)?;
        for (x, c) in &other.entries {
            self.add_at(x, c * scale)?;
        }
        Ok(())
    }

    pub fn sum(&self, other: &FrequencyVector) -> Result<FrequencyVector> {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::from(1))?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(values: &[u32], v: u32) -> KTuple {
        KTuple::new(values.to_vec(), v).unwrap()
    }

    #[test]
    fn duplicates_sum_and_zeros_vanish() {
        let x = tup(&[0, 1], 2);
        let f = FrequencyVector::from_terms(2, 2, [(x.clone(), 2), (x.clone(), -2)]).unwrap();
        assert!(f.is_zero());
        let f = FrequencyVector::from_terms(2, 2, [(x.clone(), 1), (x.clone(), 1)]).unwrap();
        assert_eq!(f.get(&x), BigInt::from(2));
        assert_eq!(f.support_size(), 1);
        assert_eq!(f.total(), BigInt::from(2));
    }

    #[test]
    fn rejects_foreign_tuples() {
        let mut f = FrequencyVector::zero(3, 2).unwrap();
        assert!(f.add_at(&tup(&[0, 1, 1], 3), 1.into()).is_err());
        assert!(f.add_at(&tup(&[0, 1], 2), 1.into()).is_err());
    }

    #[test]
    fn dense_roundtrip() {
        let f = FrequencyVector::from_terms(3, 2, [(tup(&[2, 1], 3), -4), (tup(&[0, 0], 3), 7)])
            .unwrap();
        let dense = f.to_dense();
        assert_eq!(dense.len(), 9);
        assert_eq!(dense[7], BigInt::from(-4));
        assert_eq!(FrequencyVector::from_dense(3, 2, &dense).unwrap(), f);
        assert!(!f.is_non_negative());
    }
}
