//! Orthogonal arrays `OA_t(v, k, λ)` and two independent verifiers.
//!
//! [`verify_oa_direct`] counts, for every position set and every placed
//! t-tuple, the rows that contain it. [`verify_frequency`] instead checks the
//! matrix equation `M_t(v, k) F = λ 1`, which also accepts signed vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::frequency::FrequencyVector;
use crate::inclusion_matrix::{InclusionMatrix, DEFAULT_MAX_ONES};
use crate::tuples::{checked_pow, t_subsets, KTuple, RowKey};

/// A multiset of k-tuples with a claimed strength and index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    t: usize,
    v: u32,
    k: usize,
    lambda: u64,
    rows: Vec<KTuple>,
}

impl OrthogonalArray {
    pub fn new(t: usize, v: u32, k: usize, lambda: u64, rows: Vec<KTuple>) -> Result<Self> {
        if v < 2 || k == 0 || t > k {
            return Err(Error::InvalidParameters(format!(
                "need v >= 2, k >= 1 and t <= k, got t={t} v={v} k={k}"
            )));
        }
        if lambda == 0 {
            return Err(Error::InvalidParameters("lambda must be at least 1".into()));
        }
        if let Some(bad) = rows.iter().find(|x| x.v() != v || x.k() != k) {
            return Err(Error::DimensionMismatch {
                expected: format!("rows over v={v} with k={k}"),
                found: format!("row {bad} over v={} with k={}", bad.v(), bad.k()),
            });
        }
        Ok(OrthogonalArray {
            t,
            v,
            k,
            lambda,
            rows,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn rows(&self) -> &[KTuple] {
        &self.rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OaReport {
    pub passed: bool,
    /// First placed t-tuple (in row-key order) whose count differs from λ.
    pub first_failure: Option<(RowKey, u64)>,
    /// Observed count -> number of placed t-tuples with that count.
    pub histogram: BTreeMap<u64, usize>,
}

/// Counts row inclusions directly from the definition.
pub fn verify_oa_direct(a: &OrthogonalArray) -> Result<OaReport> {
    let v = a.v as usize;
    let block =
        checked_pow(a.v, a.t).ok_or_else(|| Error::InvalidParameters("v^t is too large".into()))?;
    let mut histogram = BTreeMap::new();
    let mut first_failure = None;
    for set in t_subsets(a.k, a.t) {
        let mut counts = vec![0u64; block];
        for x in &a.rows {
            let slot = set
                .positions()
                .iter()
                .fold(0usize, |acc, &i| acc * v + x.at(i) as usize);
            counts[slot] += 1;
        }
        for (slot, &count) in counts.iter().enumerate() {
            *histogram.entry(count).or_insert(0) += 1;
            if count != a.lambda && first_failure.is_none() {
                let mut u = vec![0u32; a.t];
                let mut rest = slot;
                for s in u.iter_mut().rev() {
                    *s = (rest % v) as u32;
                    rest /= v;
                }
                first_failure = Some((RowKey::new(u, set.clone(), a.v)?, count));
            }
        }
    }
    Ok(OaReport {
        passed: first_failure.is_none(),
        first_failure,
        histogram,
    })
}

/// `F(x)` = multiplicity of `x` among the rows.
pub fn oa_to_frequency(a: &OrthogonalArray) -> Result<FrequencyVector> {
    FrequencyVector::from_terms(a.v, a.k, a.rows.iter().map(|x| (x.clone(), 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyCheck {
    /// `M F = λ 1` holds exactly.
    pub satisfied: bool,
    /// Every entry of `F` is non-negative, i.e. `F` is a genuine OA.
    pub non_negative: bool,
    /// First row where `(M F)_r != λ`, with the observed value.
    pub first_violation: Option<(RowKey, BigInt)>,
}

pub fn verify_frequency(f: &FrequencyVector, t: usize, lambda: &BigInt) -> Result<FrequencyCheck> {
    verify_frequency_with_limit(f, t, lambda, DEFAULT_MAX_ONES)
}

pub fn verify_frequency_with_limit(
    f: &FrequencyVector,
    t: usize,
    lambda: &BigInt,
    max_ones: u128,
) -> Result<FrequencyCheck> {
    let m = InclusionMatrix::build_with_limit(t, f.v(), f.k(), max_ones)?;
    let product = m.multiply(f)?;
    let first_violation = product
        .iter()
        .position(|c| c != lambda)
        .map(|r| (m.row_key(r), product[r].clone()));
    Ok(FrequencyCheck {
        satisfied: first_violation.is_none(),
        non_negative: f.is_non_negative(),
        first_violation,
    })
}

/// The cyclic Latin square `{(i, j, i + j mod v)}` as an `OA_2(v, 3, 1)`.
pub fn cyclic_latin_oa(v: u32) -> Result<OrthogonalArray> {
    let rows = (0..v)
        .flat_map(|i| (0..v).map(move |j| (i, j)))
        .map(|(i, j)| KTuple::new(vec![i, j, (i + j) % v], v))
        .collect::<Result<Vec<_>>>()?;
    OrthogonalArray::new(2, v, 3, 1, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn tup(values: &[u32], v: u32) -> KTuple {
        KTuple::new(values.to_vec(), v).unwrap()
    }

    #[test]
    fn cyclic_square_is_oa() {
        let a = cyclic_latin_oa(3).unwrap();
        let report = verify_oa_direct(&a).unwrap();
        assert!(report.passed);
        assert_eq!(report.histogram, BTreeMap::from([(1, 27)]));
        let f = oa_to_frequency(&a).unwrap();
        assert_eq!(f.support_size(), 9);
        assert!(f.iter().all(|(_, c)| *c == BigInt::from(1)));
        let check = verify_frequency(&f, 2, &BigInt::from(1)).unwrap();
        assert!(check.satisfied && check.non_negative);
    }

    #[test]
    fn full_space_is_oa_for_every_strength() {
        for t in 0..=3 {
            let rows: Vec<_> = KTuple::all(2, 3).unwrap().collect();
            let lambda = 1 << (3 - t);
            let a = OrthogonalArray::new(t, 2, 3, lambda, rows).unwrap();
            assert!(verify_oa_direct(&a).unwrap().passed, "t={t}");
            let f = oa_to_frequency(&a).unwrap();
            assert!(
                verify_frequency(&f, t, &BigInt::from(lambda))
                    .unwrap()
                    .satisfied
            );
        }
    }

    #[test]
    fn perturbed_square_fails() {
        let a = cyclic_latin_oa(3).unwrap();
        let mut rows = a.rows().to_vec();
        rows[0] = tup(&[0, 0, 1], 3);
        let bad = OrthogonalArray::new(2, 3, 3, 1, rows).unwrap();
        let report = verify_oa_direct(&bad).unwrap();
        assert!(!report.passed);
        assert!(report.histogram.contains_key(&0));
        assert!(report.histogram.contains_key(&2));
        let (key, count) = report.first_failure.unwrap();
        // (0,0) on {1,3} loses its only row first
        assert_eq!((key.to_string(), count), ("(0,0)@{1,3}".to_string(), 0));
        let f = oa_to_frequency(&bad).unwrap();
        let check = verify_frequency(&f, 2, &BigInt::from(1)).unwrap();
        assert!(!check.satisfied);
        assert_eq!(check.first_violation.unwrap().0, key);
    }

    #[test]
    fn empty_and_repeated_rows() {
        let f = oa_to_frequency(&OrthogonalArray::new(1, 2, 2, 1, vec![]).unwrap()).unwrap();
        assert!(f.is_zero());
        let x = tup(&[1, 0], 2);
        let a = OrthogonalArray::new(1, 2, 2, 1, vec![x.clone(), x.clone()]).unwrap();
        assert_eq!(oa_to_frequency(&a).unwrap().get(&x), BigInt::from(2));
    }

    #[test]
    fn zero_vector_with_zero_lambda() {
        let f = FrequencyVector::zero(3, 3).unwrap();
        let check = verify_frequency(&f, 2, &BigInt::zero()).unwrap();
        assert!(check.satisfied && check.non_negative);
    }

    #[test]
    fn rejects_bad_arrays() {
        assert!(OrthogonalArray::new(2, 3, 3, 0, vec![]).is_err());
        assert!(OrthogonalArray::new(4, 3, 3, 1, vec![]).is_err());
        assert!(OrthogonalArray::new(1, 3, 3, 1, vec![tup(&[0, 1], 3)]).is_err());
    }
}
