//! Exact rank over the rationals for integer matrices.
//!
//! The main path is fraction-free (Bareiss) elimination on arbitrary
//! precision integers: every intermediate entry is a minor of the input, so
//! the division by the previous pivot is always exact. `rank_mod_p` is a fast
//! screen only; its value can never exceed the rational rank.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::frequency::FrequencyVector;
use crate::inclusion_matrix::InclusionMatrix;

/// Default column cap for the exact elimination path.
pub const DEFAULT_MAX_EXACT_COLS: usize = 5_000;

/// Default prime for [`ExactMatrix::rank_mod_p`], `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::InvalidParameters(format!(
                "matrix dimensions must be positive, got {n_rows}x{n_cols}"
            )));
        }
        if entries.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", n_rows * n_cols),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(ExactMatrix {
            n_rows,
            n_cols,
            entries,
        })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{n_cols} columns"),
                found: format!("{} columns", bad.len()),
            });
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        ExactMatrix::new(rows.len(), n_cols, entries)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::from(1);
        }
        ExactMatrix::new(n, n, entries)
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Result<Self> {
        ExactMatrix::new(n_rows, n_cols, vec![BigInt::zero(); n_rows * n_cols])
    }

    /// Dense copy of an inclusion matrix.
    pub fn from_inclusion(m: &InclusionMatrix) -> Result<Self> {
        let n_cols = m.n_cols();
        let mut entries = vec![BigInt::zero(); m.n_rows() * n_cols];
        for (r, row) in m.rows().enumerate() {
            for &c in row {
                entries[r * n_cols + c as usize] = BigInt::from(1);
            }
        }
        ExactMatrix::new(m.n_rows(), n_cols, entries)
    }

    /// Stacks frequency vectors as rows.
    pub fn from_vectors(vectors: &[FrequencyVector]) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::InvalidParameters("no vectors to stack".into()))?;
        let mut entries = Vec::with_capacity(vectors.len() * first.dimension());
        for f in vectors {
            if f.v() != first.v() || f.k() != first.k() {
                return Err(Error::DimensionMismatch {
                    expected: format!("v={} k={}", first.v(), first.k()),
                    found: format!("v={} k={}", f.v(), f.k()),
                });
            }
            entries.extend(f.to_dense());
        }
        ExactMatrix::new(vectors.len(), first.dimension(), entries)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.n_cols + c]
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.n_cols)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    /// Reorders rows and columns: entry `(r, c)` of the result is entry
    /// `(row_order[r], col_order[c])` of `self`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Result<Self> {
        let is_perm = |order: &[usize], n: usize| {
            let mut seen = vec![false; n];
            order.len() == n
                && order
                    .iter()
                    .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
        };
        if !is_perm(row_order, self.n_rows) || !is_perm(col_order, self.n_cols) {
            return Err(Error::InvalidParameters(
                "orders must be permutations".into(),
            ));
        }
        let entries = row_order
            .iter()
            .flat_map(|&r| col_order.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        ExactMatrix::new(self.n_rows, self.n_cols, entries)
    }

    /// Exact product with a frequency vector indexed by the columns.
    pub fn multiply(&self, f: &FrequencyVector) -> Result<Vec<BigInt>> {
        if f.dimension() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.n_cols),
                found: format!("vector of length {}", f.dimension()),
            });
        }
        let dense = f.to_dense();
        Ok(self
            .entries
            .chunks(self.n_cols)
            .map(|row| {
                row.iter()
                    .zip(&dense)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn exact_rank(&self) -> Result<usize> {
        self.exact_rank_with_limit(DEFAULT_MAX_EXACT_COLS)
    }

    pub fn exact_rank_with_limit(&self, max_cols: usize) -> Result<usize> {
        if self.n_cols > max_cols {
            return Err(Error::SizeGuard {
                what: "columns for exact rank",
                requested: self.n_cols as u128,
                limit: max_cols as u128,
            });
        }
        Ok(bareiss_rank(self.rows(), self.n_cols))
    }

    /// Rank over GF(p) for a prime `p < 2^32`.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize> {
        if !is_small_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = BigInt::from(p);
        let mut a: Vec<Vec<u64>> = self
            .entries
            .chunks(self.n_cols)
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let r = e % &modulus;
                        let r = if r.is_negative() { r + &modulus } else { r };
                        r.to_u64().expect("reduced below p")
                    })
                    .collect()
            })
            .collect();
        Ok(mod_p_rank(&mut a, self.n_cols, p))
    }
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>, n_cols: usize) -> usize {
    let n_rows = a.len();
    let mut previous = BigInt::from(1);
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(p) = (rank..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in below.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..n_cols {
                let lead_zero = factor.is_zero() || pivot_row[j].is_zero();
                if lead_zero && row[j].is_zero() {
                    continue;
                }
                let mut value = pivot * &row[j];
                if !lead_zero {
                    value -= &factor * &pivot_row[j];
                }
                debug_assert!((&value % &previous).is_zero(), "inexact Bareiss division");
                row[j] = value / &previous;
            }
        }
        previous = pivot.clone();
        rank += 1;
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mod_p_rank(a: &mut [Vec<u64>], n_cols: usize, p: u64) -> usize {
    let n_rows = a.len();
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(pr) = (rank..n_rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = row[c] * inv % p;
            for j in c..n_cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - factor * pivot_row[j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Trial division primality test. Only moduli below `2^32` are accepted so
/// that products of two residues fit in a `u64`; for those the test divides
/// by every candidate up to `2^16` and is therefore complete.
pub fn is_small_prime(p: u64) -> bool {
    if !(2..1 << 32).contains(&p) {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Rank of the matrix whose rows are `vectors`; zero for an empty list.
pub fn stacked_rank(vectors: &[FrequencyVector]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    ExactMatrix::from_vectors(vectors)?.exact_rank()
}

/// True iff the vectors are linearly independent over the rationals.
pub fn are_independent(vectors: &[FrequencyVector]) -> Result<bool> {
    Ok(stacked_rank(vectors)? == vectors.len())
}
