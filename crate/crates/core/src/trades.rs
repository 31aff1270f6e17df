//! Partial Latin squares, Latin trades and their generalisation to
//! `(t, v, k)`-trades: integer vectors on `V^k` annihilated by `M_t(v, k)`.
//!
//! For `k = t + 1` the null space has the basis
//! `B_(i_1..i_{t+1}) = (x_0 - x_{i_1}) ... (x_0 - x_{i_{t+1}})` with every
//! `i_l` in `1..v`. `B_idx` is the only basis vector that is nonzero at the
//! all-nonzero tuple `idx`, where it equals `(-1)^{t+1}`. Any trade is
//! therefore decomposed by reading off its all-nonzero coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frequency::FrequencyVector;
use crate::inclusion_matrix::{InclusionMatrix, DEFAULT_MAX_ONES};
use crate::tuples::{checked_pow, KTuple};

/// Cap on the number of stored entries of a generated intercalate basis.
pub const DEFAULT_MAX_BASIS_ENTRIES: u128 = 10_000_000;

/// A `v x v` array, partially filled, with no symbol repeated in a row or
/// a column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLatinSquare {
    order: usize,
    cells: BTreeMap<(usize, usize), u32>,
}

impl PartialLatinSquare {
    pub fn new(order: usize) -> Result<Self> {
        if order < 2 || u32::try_from(order).is_err() {
            return Err(Error::InvalidParameters(format!(
                "order {order} must be at least 2"
            )));
        }
        Ok(PartialLatinSquare {
            order,
            cells: BTreeMap::new(),
        })
    }

    /// Builds a square from rows of optional symbols; `None` is an empty cell.
    pub fn from_rows(rows: &[Vec<Option<u32>>]) -> Result<Self> {
        let mut square = PartialLatinSquare::new(rows.len())?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != rows.len() {
                return Err(Error::DimensionMismatch {
                    expected: format!("{} cells in row {r}", rows.len()),
                    found: format!("{} cells", row.len()),
                });
            }
            for (c, cell) in row.iter().enumerate() {
                if let Some(s) = *cell {
                    square.insert(r, c, s)?;
                }
            }
        }
        Ok(square)
    }

    pub fn insert(&mut self, row: usize, col: usize, symbol: u32) -> Result<()> {
        let n = self.order;
        let not_latin = |reason: String| Error::NotLatin { row, col, reason };
        if row >= n || col >= n {
            return Err(not_latin(format!("outside a {n}x{n} array")));
        }
        if symbol as usize >= n {
            return Err(not_latin(format!("symbol {symbol} is outside 0..{n}")));
        }
        if self.cells.contains_key(&(row, col)) {
            return Err(not_latin("cell already filled".into()));
        }
        if self.row_content(row).contains(&symbol) {
            return Err(not_latin(format!("symbol {symbol} repeats in row {row}")));
        }
        if self.column_content(col).contains(&symbol) {
            return Err(not_latin(format!(
                "symbol {symbol} repeats in column {col}"
            )));
        }
        self.cells.insert((row, col), symbol);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> Option<u32> {
        self.cells.get(&(row, col)).copied()
    }

    /// Filled cells `(row, col, symbol)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.cells.iter().map(|(&(r, c), &s)| (r, c, s))
    }

    pub fn shape(&self) -> BTreeSet<(usize, usize)> {
        self.cells.keys().copied().collect()
    }

    pub fn volume(&self) -> usize {
        self.cells.len()
    }

    pub fn row_content(&self, row: usize) -> BTreeSet<u32> {
        self.cells
            .range((row, 0)..(row + 1, 0))
            .map(|(_, &s)| s)
            .collect()
    }

    pub fn column_content(&self, col: usize) -> BTreeSet<u32> {
        self.cells
            .iter()
            .filter(|(&(_, c), _)| c == col)
            .map(|(_, &s)| s)
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Option<u32>>> {
        (0..self.order)
            .map(|r| (0..self.order).map(|c| self.get(r, c)).collect())
            .collect()
    }
}

/// An ordered pair `(P, Q)` of partial Latin squares of one order. Whether
/// the pair really is a trade is decided by [`verify_trade`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinTrade {
    first: PartialLatinSquare,
    second: PartialLatinSquare,
}

impl LatinTrade {
    pub fn new(first: PartialLatinSquare, second: PartialLatinSquare) -> Result<Self> {
        if first.order != second.order {
            return Err(Error::DimensionMismatch {
                expected: format!("order {}", first.order),
                found: format!("order {}", second.order),
            });
        }
        Ok(LatinTrade { first, second })
    }

    pub fn first(&self) -> &PartialLatinSquare {
        &self.first
    }

    pub fn second(&self) -> &PartialLatinSquare {
        &self.second
    }

    pub fn order(&self) -> usize {
        self.first.order
    }

    pub fn volume(&self) -> usize {
        self.first.volume()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TradeCondition {
    SameShape,
    Disjoint,
    RowBalanced,
    ColumnBalanced,
}

impl TradeCondition {
    pub const ALL: [TradeCondition; 4] = [
        TradeCondition::SameShape,
        TradeCondition::Disjoint,
        TradeCondition::RowBalanced,
        TradeCondition::ColumnBalanced,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn description(self) -> &'static str {
        match self {
            TradeCondition::SameShape => "same shape",
            TradeCondition::Disjoint => "disjoint entries",
            TradeCondition::RowBalanced => "row balance",
            TradeCondition::ColumnBalanced => "column balance",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub condition: TradeCondition,
    /// First witness of failure, e.g. `"row 2"`; `None` when the condition holds.
    pub failure: Option<String>,
}

impl ConditionOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeReport {
    pub volume: usize,
    pub outcomes: Vec<ConditionOutcome>,
}

impl TradeReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(ConditionOutcome::passed)
    }

    pub fn outcome(&self, condition: TradeCondition) -> &ConditionOutcome {
        &self.outcomes[condition as usize]
    }
}

/// Checks the four trade conditions independently.
pub fn verify_trade(trade: &LatinTrade) -> TradeReport {
    let (p, q) = (&trade.first, &trade.second);
    let n = trade.order();

    let shape_p = p.shape();
    let shape_q = q.shape();
    let same_shape = shape_p
        .symmetric_difference(&shape_q)
        .next()
        .map(|(r, c)| format!("cell ({r},{c})"));

    let disjoint = p
        .cells()
        .find(|&(r, c, s)| q.get(r, c) == Some(s))
        .map(|(r, c, s)| format!("cell ({r},{c}) holds {s} in both"));

    let rows = (0..n)
        .find(|&r| p.row_content(r) != q.row_content(r))
        .map(|r| format!("row {r}"));

    let cols = (0..n)
        .find(|&c| p.column_content(c) != q.column_content(c))
        .map(|c| format!("column {c}"));

    let outcomes = TradeCondition::ALL
        .into_iter()
        .zip([same_shape, disjoint, rows, cols])
        .map(|(condition, failure)| ConditionOutcome { condition, failure })
        .collect();
    TradeReport {
        volume: p.volume(),
        outcomes,
    }
}

/// Signed frequency vector on `V^3`: +1 on the triples of `P`, -1 on those of `Q`.
pub fn trade_to_frequency(trade: &LatinTrade) -> Result<FrequencyVector> {
    let v = trade.order() as u32;
    let mut out = FrequencyVector::zero(v, 3)?;
    for (square, sign) in [(&trade.first, 1), (&trade.second, -1)] {
        for (r, c, s) in square.cells() {
            out.add_at(
                &KTuple::new(vec![r as u32, c as u32, s], v)?,
                BigInt::from(sign),
            )?;
        }
    }
    Ok(out)
}

/// Inverse of [`trade_to_frequency`] for vectors with entries in `{-1, 0, 1}`.
pub fn frequency_to_trade(f: &FrequencyVector) -> Result<LatinTrade> {
    if f.k() != 3 {
        return Err(Error::DimensionMismatch {
            expected: "k = 3".into(),
            found: format!("k = {}", f.k()),
        });
    }
    let n = f.v() as usize;
    let mut p = PartialLatinSquare::new(n)?;
    let mut q = PartialLatinSquare::new(n)?;
    for (x, c) in f.iter() {
        let (r, col, s) = (x.at(1) as usize, x.at(2) as usize, x.at(3));
        if c.is_one() {
            p.insert(r, col, s)?;
        } else if *c == -BigInt::one() {
            q.insert(r, col, s)?;
        } else {
            return Err(Error::InvalidParameters(format!(
                "entry {c} at {x} is not +1 or -1"
            )));
        }
    }
    LatinTrade::new(p, q)
}

/// A product `(x_{i_1} - x_{j_1}) ... (x_{i_{t+1}} - x_{j_{t+1}})` with
/// `i_l != j_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenIntercalate {
    pairs: Vec<(u32, u32)>,
}

impl GenIntercalate {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidParameters(
                "an intercalate needs at least one factor".into(),
            ));
        }
        if let Some((index, &(symbol, _))) = pairs.iter().enumerate().find(|(_, (i, j))| i == j) {
            return Err(Error::DegenerateFactor {
                index: index + 1,
                symbol,
            });
        }
        Ok(GenIntercalate { pairs })
    }

    /// The basis member `(x_0 - x_{i_1}) ... (x_0 - x_{i_{t+1}})`.
    pub fn basis(index: &[u32]) -> Result<Self> {
        GenIntercalate::new(index.iter().map(|&i| (0, i)).collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// The strength `t`, one less than the number of factors.
    pub fn t(&self) -> usize {
        self.pairs.len() - 1
    }
}

/// Expands the product into a frequency vector on `V^{t+1}`. Choosing the
/// second symbol of a factor contributes a sign of -1.
pub fn general_intercalate(g: &GenIntercalate, v: u32) -> Result<FrequencyVector> {
    let k = g.pairs.len();
    if let Some(&(i, j)) = g.pairs.iter().find(|(i, j)| *i >= v || *j >= v) {
        return Err(Error::SymbolOutOfRange {
            symbol: i.max(j),
            position: 0,
            v,
        });
    }
    let mut out = FrequencyVector::zero(v, k)?;
    for mask in 0u64..1 << k {
        let values = g
            .pairs
            .iter()
            .enumerate()
            .map(|(l, &(i, j))| if mask >> l & 1 == 1 { j } else { i })
            .collect();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.add_at(&KTuple::new(values, v)?, BigInt::from(sign))?;
    }
    Ok(out)
}

/// All indices in `{1, .., v-1}^{t+1}`, lexicographically.
pub fn basis_indices(t: usize, v: u32) -> Result<Vec<Vec<u32>>> {
    if v < 2 {
        return Err(Error::InvalidParameters(format!(
            "v={v} must be at least 2"
        )));
    }
    let k = t + 1;
    let count = checked_pow(v - 1, k)
        .ok_or_else(|| Error::InvalidParameters(format!("(v-1)^(t+1) overflows for t={t}")))?;
    Ok((0..count)
        .map(|mut i| {
            let mut index = vec![0u32; k];
            for slot in index.iter_mut().rev() {
                *slot = (i % (v as usize - 1)) as u32 + 1;
                i /= v as usize - 1;
            }
            index
        })
        .collect())
}

pub fn basis_intercalate(index: &[u32], v: u32) -> Result<FrequencyVector> {
    if let Some(&bad) = index.iter().find(|&&i| i == 0 || i >= v) {
        return Err(Error::InvalidParameters(format!(
            "basis index entry {bad} is outside 1..{v}"
        )));
    }
    general_intercalate(&GenIntercalate::basis(index)?, v)
}

/// The `(v-1)^{t+1}` basis intercalates of the null space of `M_t(v, t+1)`.
pub fn intercalate_basis(t: usize, v: u32) -> Result<Vec<FrequencyVector>> {
    intercalate_basis_with_limit(t, v, DEFAULT_MAX_BASIS_ENTRIES)
}

pub fn intercalate_basis_with_limit(
    t: usize,
    v: u32,
    max_entries: u128,
) -> Result<Vec<FrequencyVector>> {
    if t == 0 || v < 2 {
        return Err(Error::InvalidParameters(format!(
            "need t >= 1 and v >= 2, got t={t} v={v}"
        )));
    }
    let k = t as u32 + 1;
    let entries = ((v - 1) as u128)
        .checked_pow(k)
        .and_then(|n| n.checked_mul(1u128.checked_shl(k)?))
        .unwrap_or(u128::MAX);
    if entries > max_entries {
        return Err(Error::SizeGuard {
            what: "entries of the intercalate basis",
            requested: entries,
            limit: max_entries,
        });
    }
    basis_indices(t, v)?
        .iter()
        .map(|index| basis_intercalate(index, v))
        .collect()
}

/// Integer combination of basis intercalates, `sum c * B_idx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCombination {
    t: usize,
    v: u32,
    terms: Vec<(BigInt, Vec<u32>)>,
}

impl SignedCombination {
    /// Sums duplicate indices, drops zero coefficients and sorts by index.
    pub fn new(
        t: usize,
        v: u32,
        terms: impl IntoIterator<Item = (BigInt, Vec<u32>)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (c, index) in terms {
            if index.len() != t + 1 || index.iter().any(|&i| i == 0 || i >= v) {
                return Err(Error::InvalidParameters(format!(
                    "basis index {index:?} is not in {{1..{}}}^{}",
                    v - 1,
                    t + 1
                )));
            }
            *merged.entry(index).or_insert_with(BigInt::zero) += c;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c, i))
            .collect();
        Ok(SignedCombination { t, v, terms })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn terms(&self) -> &[(BigInt, Vec<u32>)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The vector `sum c * B_idx`.
    pub fn reconstruct(&self) -> Result<FrequencyVector> {
        let mut out = FrequencyVector::zero(self.v, self.t + 1)?;
        for (c, index) in &self.terms {
            out.add_scaled(&basis_intercalate(index, self.v)?, c)?;
        }
        Ok(out)
    }
}

pub fn format_index(index: &[u32]) -> String {
    let inner: Vec<String> = index.iter().map(u32::to_string).collect();
    format!("B_({})", inner.join(","))
}

impl fmt::Display for SignedCombination {
    /// One `±c · B_(i_1,...)` line per term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, index) in &self.terms {
            let sign = if c < &BigInt::zero() { '-' } else { '+' };
            writeln!(f, "{sign}{} · {}", c.magnitude(), format_index(index))?;
        }
        Ok(())
    }
}

fn check_strength(f: &FrequencyVector, t: usize) -> Result<()> {
    if t > f.k() {
        return Err(Error::InvalidParameters(format!(
            "t={t} exceeds k={}",
            f.k()
        )));
    }
    Ok(())
}

/// Returns the first row of `M_t(v, k) * f` that is nonzero, if any.
fn first_violation(
    f: &FrequencyVector,
    t: usize,
    max_ones: u128,
) -> Result<Option<(String, BigInt)>> {
    check_strength(f, t)?;
    let m = InclusionMatrix::build_with_limit(t, f.v(), f.k(), max_ones)?;
    let product = m.multiply(f)?;
    Ok(m.first_nonzero(&product)
        .map(|(row, value)| (row.to_string(), value)))
}

/// True iff `M_t(v, k) * f = 0`.
pub fn verify_general_trade(f: &FrequencyVector, t: usize) -> Result<bool> {
    verify_general_trade_with_limit(f, t, DEFAULT_MAX_ONES)
}

pub fn verify_general_trade_with_limit(
    f: &FrequencyVector,
    t: usize,
    max_ones: u128,
) -> Result<bool> {
    Ok(first_violation(f, t, max_ones)?.is_none())
}

/// Writes a `(t, v, t+1)`-trade in the intercalate basis.
pub fn decompose(f: &FrequencyVector, t: usize) -> Result<SignedCombination> {
    decompose_with_limit(f, t, DEFAULT_MAX_ONES)
}

pub fn decompose_with_limit(
    f: &FrequencyVector,
    t: usize,
    max_ones: u128,
) -> Result<SignedCombination> {
    if t == 0 || f.k() != t + 1 {
        return Err(Error::InvalidParameters(format!(
            "decomposition needs t >= 1 and k = t + 1, got t={t} k={}",
            f.k()
        )));
    }
    if let Some((row, value)) = first_violation(f, t, max_ones)? {
        return Err(Error::NotInNullSpace {
            row,
            value: value.to_string(),
        });
    }
    let sign = if (t + 1).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let terms = f
        .iter()
        .filter(|(x, _)| x.weight() == x.k())
        .map(|(x, c)| (c * &sign, x.values().to_vec()));
    let combination = SignedCombination::new(t, f.v(), terms)?;

    let rebuilt = combination.reconstruct()?;
    if &rebuilt != f {
        return Err(Error::ReconstructionMismatch(first_difference(f, &rebuilt)));
    }
    Ok(combination)
}

fn first_difference(a: &FrequencyVector, b: &FrequencyVector) -> String {
    a.iter()
        .chain(b.iter())
        .map(|(x, _)| x)
        .find(|x| a.get(x) != b.get(x))
        .map(|x| x.to_string())
        .unwrap_or_default()
}

fn monomial(x: &KTuple) -> String {
    x.values().iter().map(|s| format!("x_{s}")).collect()
}

/// Renders `sum f(x) x_{x_1} ... x_{x_k}` with positive terms first, each
/// block in lexicographic tuple order.
pub fn to_polynomial(f: &FrequencyVector) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let zero = BigInt::zero();
    let positive = f.iter().filter(|(_, c)| **c > zero);
    let negative = f.iter().filter(|(_, c)| **c < zero);
    let mut out = String::new();
    for (x, c) in positive.chain(negative) {
        let magnitude = c.magnitude();
        let body = if magnitude.is_one() {
            monomial(x)
        } else {
            format!("{magnitude}·{}", monomial(x))
        };
        match (out.is_empty(), *c < zero) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}
