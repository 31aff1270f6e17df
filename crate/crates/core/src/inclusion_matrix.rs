//! The t-inclusion matrix `M_t(v, k)` and the column identities it satisfies.
//!
//! Rows are placed t-tuples `u_I`, columns are k-tuples `x`, and the entry is
//! 1 exactly when `x` agrees with `u` on the positions `I`. Besides building
//! the matrix, this module produces three certificates about its column
//! space: the pivot row of a low-weight column, the alternating shadow sum
//! that vanishes for high-weight columns, and the rewriting of any column in
//! terms of columns of weight at most `t`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frequency::FrequencyVector;
use crate::tuples::{binomial, pow, t_subsets, KTuple, PositionSet, RowKey};

/// Default cap on the number of stored ones, `C(k,t) * v^k`.
pub const DEFAULT_MAX_ONES: u128 = 100_000_000;

fn check_parameters(t: usize, v: u32, k: usize) -> Result<()> {
    if v < 2 {
        return Err(Error::InvalidParameters(format!(
            "v={v} must be at least 2"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    if t > k {
        return Err(Error::InvalidParameters(format!("t={t} exceeds k={k}")));
    }
    Ok(())
}

/// Number of ones in `M_t(v, k)`, or `None` on overflow.
pub fn ones_count(t: usize, v: u32, k: usize) -> Option<u128> {
    let cols = (v as u128).checked_pow(u32::try_from(k).ok()?)?;
    (binomial(k, t) as u128).checked_mul(cols)
}

/// True iff `row` (a placed t-tuple) is included in `x`.
pub fn contains(row: &RowKey, x: &KTuple) -> Result<bool> {
    let positions = row.positions().positions();
    if positions.last().is_some_and(|&p| p > x.k()) {
        return Err(Error::DimensionMismatch {
            expected: format!("positions within 1..={}", x.k()),
            found: row.positions().to_string(),
        });
    }
    Ok(positions.iter().zip(row.u()).all(|(&i, &u)| x.at(i) == u))
}

/// Sparse 0/1 matrix stored as one sorted column list per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionMatrix {
    t: usize,
    v: u32,
    k: usize,
    subsets: Vec<PositionSet>,
    rows: Vec<Vec<u32>>,
}

impl InclusionMatrix {
    pub fn build(t: usize, v: u32, k: usize) -> Result<Self> {
        Self::build_with_limit(t, v, k, DEFAULT_MAX_ONES)
    }

    pub fn build_with_limit(t: usize, v: u32, k: usize, max_ones: u128) -> Result<Self> {
        check_parameters(t, v, k)?;
        let ones = ones_count(t, v, k).unwrap_or(u128::MAX);
        if ones > max_ones {
            return Err(Error::SizeGuard {
                what: "ones in M_t(v,k)",
                requested: ones,
                limit: max_ones,
            });
        }
        let n_cols = pow(v, k);
        if u32::try_from(n_cols).is_err() {
            return Err(Error::SizeGuard {
                what: "columns",
                requested: n_cols as u128,
                limit: u32::MAX as u128,
            });
        }

        let place = |i: usize| pow(v, k - i);
        let per_row = pow(v, k - t);
        let subsets = t_subsets(k, t);
        let mut rows = Vec::with_capacity(binomial(k, t) * pow(v, t));
        for set in &subsets {
            let fixed = set.positions();
            let free: Vec<usize> = (1..=k).filter(|p| !set.contains(*p)).collect();
            for u_index in 0..pow(v, t) {
                let mut u = vec![0u32; t];
                let mut rest = u_index;
                for slot in u.iter_mut().rev() {
                    *slot = (rest % v as usize) as u32;
                    rest /= v as usize;
                }
                let base: usize = fixed
                    .iter()
                    .zip(&u)
                    .map(|(&i, &s)| s as usize * place(i))
                    .sum();
                let mut row = Vec::with_capacity(per_row);
                for a in 0..per_row {
                    // digits of `a` fill the free positions, most significant first
                    let mut rest = a;
                    let mut col = base;
                    for &f in free.iter().rev() {
                        col += (rest % v as usize) * place(f);
                        rest /= v as usize;
                    }
                    row.push(col as u32);
                }
                rows.push(row);
            }
        }
        Ok(InclusionMatrix {
            t,
            v,
            k,
            subsets,
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

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        pow(self.v, self.k)
    }

    pub fn ones(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Column indices holding a 1 in row `r`, ascending.
    pub fn row(&self, r: usize) -> &[u32] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn entry(&self, r: usize, c: usize) -> bool {
        u32::try_from(c).is_ok_and(|c| self.rows[r].binary_search(&c).is_ok())
    }

    pub fn row_key(&self, r: usize) -> RowKey {
        RowKey::unrank(r, self.v, self.k, self.t).expect("row index in range")
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

    /// Rows with a 1 in column `x`: one per position set, ascending.
    pub fn column_rows(&self, x: &KTuple) -> Result<Vec<usize>> {
        self.check_tuple(x)?;
        let block = pow(self.v, self.t);
        Ok(self
            .subsets
            .iter()
            .enumerate()
            .map(|(set_rank, set)| {
                let within = set
                    .positions()
                    .iter()
                    .fold(0usize, |acc, &i| acc * self.v as usize + x.at(i) as usize);
                set_rank * block + within
            })
            .collect())
    }

    /// Exact product `M * f`.
    pub fn multiply(&self, f: &FrequencyVector) -> Result<Vec<BigInt>> {
        if f.v() != self.v || f.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: format!("vector over v={} k={}", self.v, self.k),
                found: format!("vector over v={} k={}", f.v(), f.k()),
            });
        }
        let mut out = vec![BigInt::zero(); self.n_rows()];
        for (x, c) in f.iter() {
            for r in self.column_rows(x)? {
                out[r] += c;
            }
        }
        Ok(out)
    }

    /// Evaluates a signed sum of columns.
    pub fn evaluate(&self, combination: &SignedColumnCombination) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.n_rows()];
        for (c, x) in combination.terms() {
            for r in self.column_rows(x)? {
                out[r] += c;
            }
        }
        Ok(out)
    }

    /// First row index whose entry in `values` is nonzero, with its row key.
    pub fn first_nonzero(&self, values: &[BigInt]) -> Option<(RowKey, BigInt)> {
        values
            .iter()
            .position(|c| !c.is_zero())
            .map(|r| (self.row_key(r), values[r].clone()))
    }
}

/// Signed integer combination of matrix columns, `sum c_y * C_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedColumnCombination {
    terms: Vec<(BigInt, KTuple)>,
}

impl SignedColumnCombination {
    pub fn terms(&self) -> &[(BigInt, KTuple)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: &KTuple) -> BigInt {
        self.terms
            .iter()
            .find(|(_, y)| y == x)
            .map(|(c, _)| c.clone())
            .unwrap_or_default()
    }
}

fn sign(exponent: usize) -> BigInt {
    if exponent.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Row `u_I` whose first 1 lies in column `x`, for `weight(x) <= t`.
///
/// Several position sets can contain the support of `x`; the
/// lexicographically smallest one is chosen.
pub fn pivot_row(x: &KTuple, t: usize) -> Result<RowKey> {
    let k = x.k();
    if t > k {
        return Err(Error::InvalidParameters(format!("t={t} exceeds k={k}")));
    }
    let support = x.support();
    if support.len() > t {
        return Err(Error::WeightExceedsT {
            tuple: x.to_string(),
            weight: support.len(),
            t,
        });
    }
    let set: PositionSet = t_subsets(k, t)
        .into_iter()
        .find(|s| s.is_superset_of(&support))
        .expect("a t-subset containing the support exists");
    let u = set.positions().iter().map(|&i| x.at(i)).collect();
    RowKey::new(u, set, x.v())
}

/// The vanishing alternating sum `sum_{y in shadow(x)} (-1)^{weight(y)} C_y`
/// for `weight(x) > t`, with terms in lexicographic tuple order.
pub fn shadow_relation(x: &KTuple, t: usize) -> Result<SignedColumnCombination> {
    let weight = x.weight();
    if weight <= t {
        return Err(Error::WeightNotAboveT {
            tuple: x.to_string(),
            weight,
            t,
        });
    }
    let terms = x
        .shadow()
        .into_iter()
        .map(|y| (sign(y.weight()), y))
        .collect();
    Ok(SignedColumnCombination { terms })
}

/// Rewrites columns as combinations of columns of weight at most `t`.
///
/// Each high-weight column is expanded once through its shadow relation and
/// the lower-weight columns are reduced recursively; results are memoized.
#[derive(Debug, Default)]
pub struct ColumnReducer {
    t: usize,
    memo: HashMap<KTuple, BTreeMap<KTuple, BigInt>>,
}

impl ColumnReducer {
    pub fn new(t: usize) -> Self {
        ColumnReducer {
            t,
            memo: HashMap::new(),
        }
    }

    fn reduce_map(&mut self, x: &KTuple) -> BTreeMap<KTuple, BigInt> {
        if let Some(hit) = self.memo.get(x) {
            return hit.clone();
        }
        let weight = x.weight();
        let mut out = BTreeMap::new();
        if weight <= self.t {
            out.insert(x.clone(), BigInt::one());
        } else {
            // C_x = sum_{y != x} (-1)^{L_y - L_x + 1} C_y; L_y < L_x so recursion ends
            for y in x.shadow().into_iter().filter(|y| y != x) {
                let factor = sign(weight - y.weight() + 1);
                for (z, c) in self.reduce_map(&y) {
                    *out.entry(z).or_insert_with(BigInt::zero) += c * &factor;
                }
            }
            out.retain(|_, c| !c.is_zero());
        }
        self.memo.insert(x.clone(), out.clone());
        out
    }

    /// Terms ordered by decreasing weight, then decreasing lexicographic order.
    pub fn reduce(&mut self, x: &KTuple) -> SignedColumnCombination {
        let mut terms: Vec<(BigInt, KTuple)> = self
            .reduce_map(x)
            .into_iter()
            .map(|(y, c)| (c, y))
            .collect();
        terms.sort_by(|(_, a), (_, b)| b.weight().cmp(&a.weight()).then_with(|| b.cmp(a)));
        SignedColumnCombination { terms }
    }
}

pub fn reduce_column(x: &KTuple, t: usize) -> SignedColumnCombination {
    ColumnReducer::new(t).reduce(x)
}

/// Unit column vector check helper: `C_x` as a dense integer column.
pub fn column_vector(m: &InclusionMatrix, x: &KTuple) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::zero(); m.n_rows()];
    for r in m.column_rows(x)? {
        out[r] = BigInt::one();
    }
    Ok(out)
}

/// Closed-form rank `sum_{i=0}^{t} C(k,i) (v-1)^i`.
pub fn rank_formula(t: usize, v: u32, k: usize) -> u128 {
    (0..=t.min(k))
        .map(|i| binomial(k, i) as u128 * ((v as u128) - 1).pow(i as u32))
        .sum()
}
