//! Coordinate system for inclusion matrices.
//!
//! Columns are indexed by k-tuples over `V = {0, .., v-1}` in lexicographic
//! order. Rows are indexed by a t-tuple `u` placed on a set of positions `I`;
//! position sets are ordered lexicographically and, inside one position set,
//! `u` runs lexicographically. Positions are 1-based, symbols are 0-based.

use std::fmt;

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub(crate) fn checked_pow(base: u32, exp: usize) -> Option<usize> {
    let exp = u32::try_from(exp).ok()?;
    (base as usize).checked_pow(exp)
}

pub(crate) fn pow(base: u32, exp: usize) -> usize {
    checked_pow(base, exp).expect("power overflows usize")
}

fn check_alphabet(v: u32) -> Result<()> {
    if v < 2 {
        return Err(Error::InvalidParameters(format!(
            "alphabet size v={v} must be at least 2"
        )));
    }
    Ok(())
}

/// An ordered k-tuple over the alphabet `{0, .., v-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KTuple {
    values: Vec<u32>,
    v: u32,
}

impl KTuple {
    pub fn new(values: Vec<u32>, v: u32) -> Result<Self> {
        check_alphabet(v)?;
        if values.is_empty() {
            return Err(Error::InvalidParameters(
                "tuple length k must be at least 1".into(),
            ));
        }
        if checked_pow(v, values.len()).is_none() {
            return Err(Error::InvalidParameters(format!(
                "v^k = {v}^{} does not fit in a machine index",
                values.len()
            )));
        }
        if let Some((position, &symbol)) = values.iter().enumerate().find(|(_, &s)| s >= v) {
            return Err(Error::SymbolOutOfRange {
                symbol,
                position: position + 1,
                v,
            });
        }
        Ok(KTuple { values, v })
    }

    /// Parses the comma separated text form, e.g. `"1,0,2"`.
    pub fn parse(text: &str, v: u32) -> Result<Self> {
        let values = text
            .split(',')
            .enumerate()
            .map(|(i, field)| {
                field.trim().parse::<u32>().map_err(|e| {
                    Error::parse(1, i + 1, format!("bad symbol {:?}: {e}", field.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        KTuple::new(values, v)
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    /// Symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// 0-based position in the lexicographic enumeration of `V^k`.
    pub fn rank(&self) -> usize {
        self.values
            .iter()
            .fold(0usize, |acc, &s| acc * self.v as usize + s as usize)
    }

    pub fn unrank(index: usize, v: u32, k: usize) -> Result<Self> {
        check_alphabet(v)?;
        let len = checked_pow(v, k).ok_or_else(|| {
            Error::InvalidParameters(format!("v^k = {v}^{k} does not fit in a machine index"))
        })?;
        if k == 0 {
            return Err(Error::InvalidParameters(
                "tuple length k must be at least 1".into(),
            ));
        }
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
        let mut values = vec![0u32; k];
        let mut rest = index;
        for slot in values.iter_mut().rev() {
            *slot = (rest % v as usize) as u32;
            rest /= v as usize;
        }
        Ok(KTuple { values, v })
    }

    /// All of `V^k` in lexicographic order.
    pub fn all(v: u32, k: usize) -> Result<impl Iterator<Item = KTuple>> {
        let len = checked_pow(v, k)
            .ok_or_else(|| Error::InvalidParameters(format!("v^k = {v}^{k} is too large")))?;
        KTuple::unrank(0, v, k)?;
        Ok((0..len).map(move |i| KTuple::unrank(i, v, k).expect("index in range")))
    }

    /// 1-based positions holding a nonzero symbol.
    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Number of nonzero symbols.
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&s| s != 0).count()
    }

    /// Every tuple obtained by zeroing some subset of the nonzero positions,
    /// in lexicographic order. Always contains `self` (last) and the zero
    /// tuple (first).
    pub fn shadow(&self) -> Vec<KTuple> {
        let support = self.support();
        let weight = support.len();
        (0u64..1 << weight)
            .map(|mask| {
                let mut values = vec![0u32; self.k()];
                for (bit, &pos) in support.iter().enumerate() {
                    // First support position is the most significant bit, so
                    // increasing masks give increasing tuples.
                    if mask >> (weight - 1 - bit) & 1 == 1 {
                        values[pos - 1] = self.values[pos - 1];
                    }
                }
                KTuple { values, v: self.v }
            })
            .collect()
    }
}

impl fmt::Display for KTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.values, ",")
    }
}

fn write_joined<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    sep: &str,
) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A strictly increasing set of 1-based positions drawn from `{1, .., k}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionSet(Vec<usize>);

impl PositionSet {
    pub fn new(positions: Vec<usize>, k: usize) -> Result<Self> {
        let increasing = positions.windows(2).all(|w| w[0] < w[1]);
        let in_range = positions.iter().all(|&p| (1..=k).contains(&p));
        if !increasing || !in_range {
            return Err(Error::InvalidPositionSet { positions, k });
        }
        Ok(PositionSet(positions))
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.binary_search(&position).is_ok()
    }

    pub fn is_superset_of(&self, positions: &[usize]) -> bool {
        positions.iter().all(|&p| self.contains(p))
    }

    /// Rank among the `C(k, t)` subsets of the same size in lexicographic order.
    pub fn lex_rank(&self, k: usize) -> usize {
        let t = self.0.len();
        let mut rank = 0;
        let mut previous = 0;
        for (j, &p) in self.0.iter().enumerate() {
            // subsets that agree so far but pick a smaller element here
            for smaller in previous + 1..p {
                rank += binomial(k - smaller, t - j - 1);
            }
            previous = p;
        }
        rank
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_joined(f, &self.0, ",")?;
        f.write_str("}")
    }
}

/// All t-subsets of `{1, .., k}` in lexicographic order.
pub fn t_subsets(k: usize, t: usize) -> Vec<PositionSet> {
    let mut out = Vec::with_capacity(binomial(k, t));
    if t > k {
        return out;
    }
    let mut current: Vec<usize> = (1..=t).collect();
    loop {
        out.push(PositionSet(current.clone()));
        // rightmost slot that can still move up
        let Some(j) = (0..t).rev().find(|&j| current[j] < k - (t - 1 - j)) else {
            break;
        };
        current[j] += 1;
        for l in j + 1..t {
            current[l] = current[l - 1] + 1;
        }
    }
    out
}

/// A t-tuple `u` placed on a position set `I`, written `u_I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowKey {
    u: Vec<u32>,
    positions: PositionSet,
}

impl RowKey {
    pub fn new(u: Vec<u32>, positions: PositionSet, v: u32) -> Result<Self> {
        check_alphabet(v)?;
        if u.len() != positions.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} symbols for {positions}", positions.len()),
                found: format!("{} symbols", u.len()),
            });
        }
        if let Some((position, &symbol)) = u.iter().enumerate().find(|(_, &s)| s >= v) {
            return Err(Error::SymbolOutOfRange {
                symbol,
                position: position + 1,
                v,
            });
        }
        Ok(RowKey { u, positions })
    }

    pub fn u(&self) -> &[u32] {
        &self.u
    }

    pub fn positions(&self) -> &PositionSet {
        &self.positions
    }

    pub fn t(&self) -> usize {
        self.u.len()
    }

    /// Row index inside `M_t(v, k)`.
    pub fn rank(&self, v: u32, k: usize) -> usize {
        let t = self.t();
        let within = self
            .u
            .iter()
            .fold(0usize, |acc, &s| acc * v as usize + s as usize);
        self.positions.lex_rank(k) * pow(v, t) + within
    }

    pub fn unrank(index: usize, v: u32, k: usize, t: usize) -> Result<Self> {
        check_alphabet(v)?;
        if t > k {
            return Err(Error::InvalidParameters(format!("t={t} exceeds k={k}")));
        }
        let block = checked_pow(v, t)
            .ok_or_else(|| Error::InvalidParameters(format!("v^t = {v}^{t} is too large")))?;
        let len = binomial(k, t) * block;
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
        let positions = t_subsets(k, t).swap_remove(index / block);
        let mut u = vec![0u32; t];
        let mut rest = index % block;
        for slot in u.iter_mut().rev() {
            *slot = (rest % v as usize) as u32;
            rest /= v as usize;
        }
        Ok(RowKey { u, positions })
    }

    /// Parses the text form `"(u_1,...,u_t)@{i_1,...,i_t}"`.
    pub fn parse(text: &str, v: u32, k: usize) -> Result<Self> {
        let bad = |msg: &str| Error::parse(1, 1, format!("{msg} in row key {text:?}"));
        let (u_part, i_part) = text
            .trim()
            .split_once('@')
            .ok_or_else(|| bad("missing '@'"))?;
        let u_inner = u_part
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected parenthesised symbols"))?;
        let i_inner = i_part
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| bad("expected braced positions"))?;
        let split = |s: &str| -> Result<Vec<usize>> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',')
                .map(|f| f.trim().parse::<usize>().map_err(|_| bad("bad number")))
                .collect()
        };
        let u = split(u_inner)?.into_iter().map(|s| s as u32).collect();
        let positions = PositionSet::new(split(i_inner)?, k)?;
        RowKey::new(u, positions, v)
    }
}

impl fmt::Display for RowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_joined(f, &self.u, ",")?;
        write!(f, ")@{}", self.positions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tup(values: &[u32], v: u32) -> KTuple {
        KTuple::new(values.to_vec(), v).unwrap()
    }

    fn key(u: &[u32], positions: &[usize], v: u32, k: usize) -> RowKey {
        RowKey::new(
            u.to_vec(),
            PositionSet::new(positions.to_vec(), k).unwrap(),
            v,
        )
        .unwrap()
    }

    #[test]
    fn rank_tuple_examples() {
        assert_eq!(tup(&[0, 0, 0], 3).rank(), 0);
        assert_eq!(tup(&[1, 0, 2], 3).rank(), 11);
        assert_eq!(tup(&[2, 2, 2], 3).rank(), 26);
    }

    #[test]
    fn unrank_tuple_examples() {
        assert_eq!(KTuple::unrank(0, 3, 3).unwrap(), tup(&[0, 0, 0], 3));
        assert_eq!(KTuple::unrank(11, 3, 3).unwrap(), tup(&[1, 0, 2], 3));
        assert_eq!(KTuple::unrank(26, 3, 3).unwrap(), tup(&[2, 2, 2], 3));
        assert_eq!(
            KTuple::unrank(27, 3, 3),
            Err(Error::IndexOutOfRange { index: 27, len: 27 })
        );
    }

    #[test]
    fn tuple_validation() {
        assert!(matches!(
            KTuple::new(vec![0, 3], 3),
            Err(Error::SymbolOutOfRange {
                symbol: 3,
                position: 2,
                v: 3
            })
        ));
        assert!(KTuple::new(vec![], 3).is_err());
        assert!(KTuple::new(vec![0], 1).is_err());
        assert_eq!(KTuple::parse("1, 0,2", 3).unwrap(), tup(&[1, 0, 2], 3));
        assert!(KTuple::parse("1,x", 3).is_err());
    }

    #[test]
    fn rank_rowkey_examples() {
        assert_eq!(key(&[0, 0], &[1, 2], 3, 3).rank(3, 3), 0);
        assert_eq!(key(&[1, 0], &[1, 3], 3, 3).rank(3, 3), 12);
        assert_eq!(key(&[2, 2], &[2, 3], 3, 3).rank(3, 3), 26);
    }

    #[test]
    fn support_examples() {
        let zero = tup(&[0, 0, 0], 3);
        assert_eq!((zero.support(), zero.weight()), (vec![], 0));
        let x = tup(&[1, 0, 2], 3);
        assert_eq!((x.support(), x.weight()), (vec![1, 3], 2));
        let full = tup(&[2, 2, 2], 3);
        assert_eq!((full.support(), full.weight()), (vec![1, 2, 3], 3));
    }

    #[test]
    fn shadow_examples() {
        assert_eq!(tup(&[0, 0], 2).shadow(), vec![tup(&[0, 0], 2)]);
        assert_eq!(
            tup(&[1, 1], 2).shadow(),
            vec![
                tup(&[0, 0], 2),
                tup(&[0, 1], 2),
                tup(&[1, 0], 2),
                tup(&[1, 1], 2)
            ]
        );
        // enumeration of {0,1} x {0} x {0,2}
        let mut expected = Vec::new();
        for a in [0, 1] {
            for c in [0, 2] {
                expected.push(tup(&[a, 0, c], 3));
            }
        }
        expected.sort();
        assert_eq!(tup(&[1, 0, 2], 3).shadow(), expected);
    }

    #[test]
    fn t_subsets_examples() {
        let show = |k, t| {
            t_subsets(k, t)
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(3, 2), ["{1,2}", "{1,3}", "{2,3}"]);
        assert_eq!(show(3, 3), ["{1,2,3}"]);
        assert_eq!(show(4, 1), ["{1}", "{2}", "{3}", "{4}"]);
        assert_eq!(show(3, 0), ["{}"]);
        assert!(t_subsets(2, 3).is_empty());
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for k in 0..=6 {
            for t in 0..=k {
                let subsets = t_subsets(k, t);
                assert_eq!(subsets.len(), binomial(k, t));
                for (i, s) in subsets.iter().enumerate() {
                    assert_eq!(s.lex_rank(k), i, "k={k} t={t} {s}");
                }
            }
        }
    }

    #[test]
    fn shadow_order_and_weight_exhaustive() {
        for v in 2..=3 {
            for k in 1..=4 {
                for x in KTuple::all(v, k).unwrap() {
                    let shadow = x.shadow();
                    assert_eq!(shadow.len(), 1 << x.weight());
                    assert_eq!(shadow.last(), Some(&x));
                    for y in shadow.iter().filter(|y| **y != x) {
                        assert!(y.weight() < x.weight());
                        assert!(y.rank() < x.rank());
                    }
                }
            }
        }
    }

    #[test]
    fn rowkey_rank_is_bijective() {
        for (v, k, t) in [(2, 3, 1), (3, 3, 2), (3, 4, 2), (2, 4, 4), (4, 2, 0)] {
            let n = binomial(k, t) * pow(v, t);
            for i in 0..n {
                let r = RowKey::unrank(i, v, k, t).unwrap();
                assert_eq!(r.rank(v, k), i);
            }
            assert!(RowKey::unrank(n, v, k, t).is_err());
        }
    }

    #[test]
    fn rowkey_text_form() {
        let r = key(&[0, 1], &[1, 2], 3, 3);
        assert_eq!(r.to_string(), "(0,1)@{1,2}");
        assert_eq!(RowKey::parse("(0,1)@{1,2}", 3, 3).unwrap(), r);
        assert!(RowKey::parse("(0,1)@{2,1}", 3, 3).is_err());
        assert!(RowKey::parse("(0,1,1)@{1,2}", 3, 3).is_err());
    }

    proptest! {
        #[test]
        fn rank_unrank_roundtrip(v in 2u32..6, k in 1usize..6, seed in any::<u64>()) {
            let len = pow(v, k);
            let i = (seed % len as u64) as usize;
            let x = KTuple::unrank(i, v, k).unwrap();
            prop_assert_eq!(x.rank(), i);
            prop_assert_eq!(KTuple::parse(&x.to_string(), v).unwrap(), x);
        }
    }
}
