//! Text formats.
//!
//! * Partial Latin square: `v` lines of `v` whitespace separated fields, each
//!   a decimal symbol or `.` for an empty cell.
//! * Trade: two such blocks separated by one blank line, `P` first.
//! * Frequency vector: lines `x_1,...,x_k : c`, any order, duplicates summed.
//! * Orthogonal array: optional header `OA t=<t> v=<v> k=<k> lambda=<λ>`,
//!   then one row of `k` whitespace separated symbols per line.
//! * Matrix Market coordinate export of an inclusion matrix, and a dense
//!   `1` / `.` picture for small matrices.
//!
//! Blank lines and lines starting with `#` are ignored in frequency and OA
//! files. Parse errors carry 1-based line and field numbers.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::frequency::FrequencyVector;
use crate::inclusion_matrix::InclusionMatrix;
use crate::oa::OrthogonalArray;
use crate::trades::{LatinTrade, PartialLatinSquare};
use crate::tuples::KTuple;

/// Dense dumps above this many cells are refused.
pub const DEFAULT_MAX_DENSE_CELLS: usize = 1_000_000;

pub const MATRIX_MARKET_HEADER: &str = "%%MatrixMarket matrix coordinate integer general";

fn parse_symbol(field: &str, line: usize, index: usize) -> Result<u32> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(
            line,
            index,
            format!("expected a symbol, found {field:?}"),
        ));
    }
    field
        .parse()
        .map_err(|e| Error::parse(line, index, format!("bad symbol {field:?}: {e}")))
}

/// Parses a square whose first line is line `first_line` of the file.
fn parse_square_lines(lines: &[(usize, &str)]) -> Result<PartialLatinSquare> {
    let order = lines.len();
    let mut rows = Vec::with_capacity(order);
    for &(line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != order {
            return Err(Error::parse(
                line_no,
                fields.len().min(order) + 1,
                format!("expected {order} fields, found {}", fields.len()),
            ));
        }
        let row = fields
            .iter()
            .enumerate()
            .map(|(i, f)| match *f {
                "." => Ok(None),
                f => parse_symbol(f, line_no, i + 1).map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let mut square = PartialLatinSquare::new(order)
        .map_err(|e| Error::parse(lines.first().map_or(1, |l| l.0), 1, e.to_string()))?;
    for (r, row) in rows.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            if let Some(s) = *cell {
                square
                    .insert(r, c, s)
                    .map_err(|e| Error::parse(lines[r].0, c + 1, e.to_string()))?;
            }
        }
    }
    Ok(square)
}

fn numbered_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect()
}

/// Splits into blocks of consecutive non-blank lines.
fn blocks(text: &str) -> Vec<Vec<(usize, &str)>> {
    let mut out: Vec<Vec<(usize, &str)>> = Vec::new();
    let mut current = Vec::new();
    for (no, line) in numbered_lines(text) {
        if line.trim().is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
        } else {
            current.push((no, line));
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

pub fn parse_partial_latin_square(text: &str) -> Result<PartialLatinSquare> {
    let mut found = blocks(text);
    match found.len() {
        1 => parse_square_lines(&found.remove(0)),
        0 => Err(Error::parse(1, 1, "empty square")),
        _ => Err(Error::parse(found[1][0].0, 1, "unexpected second block")),
    }
}

pub fn parse_trade(text: &str) -> Result<LatinTrade> {
    let found = blocks(text);
    if found.len() != 2 {
        let line = found.get(2).map_or(text.lines().count().max(1), |b| b[0].0);
        return Err(Error::parse(
            line,
            1,
            format!(
                "expected two blocks separated by a blank line, found {}",
                found.len()
            ),
        ));
    }
    let p = parse_square_lines(&found[0])?;
    let q = parse_square_lines(&found[1])?;
    LatinTrade::new(p, q).map_err(|e| Error::parse(found[1][0].0, 1, e.to_string()))
}

pub fn write_partial_latin_square(square: &PartialLatinSquare) -> String {
    let mut out = String::new();
    for row in square.to_rows() {
        let fields: Vec<String> = row
            .iter()
            .map(|c| c.map_or_else(|| ".".to_string(), |s| s.to_string()))
            .collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_trade(trade: &LatinTrade) -> String {
    format!(
        "{}\n{}",
        write_partial_latin_square(trade.first()),
        write_partial_latin_square(trade.second())
    )
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    numbered_lines(text)
        .into_iter()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Parses a frequency vector file over the alphabet `{0, .., v-1}`.
pub fn parse_frequency(text: &str, v: u32) -> Result<FrequencyVector> {
    let mut out: Option<FrequencyVector> = None;
    for (no, line) in content_lines(text) {
        let (tuple_part, coeff_part) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(no, 1, "expected `x_1,...,x_k : c`"))?;
        let values = tuple_part
            .split(',')
            .enumerate()
            .map(|(i, f)| parse_symbol(f.trim(), no, i + 1))
            .collect::<Result<Vec<_>>>()?;
        let k = values.len();
        let coeff: BigInt = coeff_part.trim().parse().map_err(|_| {
            Error::parse(
                no,
                k + 1,
                format!("bad coefficient {:?}", coeff_part.trim()),
            )
        })?;
        let x = KTuple::new(values, v).map_err(|e| match e {
            Error::SymbolOutOfRange { position, .. } => Error::parse(no, position, e.to_string()),
            e => Error::parse(no, 1, e.to_string()),
        })?;
        let f = match &mut out {
            Some(f) => f,
            None => out.insert(FrequencyVector::zero(v, k)?),
        };
        if f.k() != k {
            return Err(Error::parse(
                no,
                1,
                format!("expected {} symbols, found {k}", f.k()),
            ));
        }
        f.add_at(&x, coeff)?;
    }
    out.ok_or_else(|| Error::parse(1, 1, "no entries; the tuple length is unknown"))
}

/// Nonzero entries in lexicographic order.
pub fn write_frequency(f: &FrequencyVector) -> String {
    let mut out = String::new();
    for (x, c) in f.iter() {
        let _ = writeln!(out, "{x} : {c}");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OaHeader {
    pub t: usize,
    pub v: u32,
    pub k: usize,
    pub lambda: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OaFile {
    pub header: Option<OaHeader>,
    pub rows: Vec<Vec<u32>>,
}

fn parse_header(line: &str, no: usize) -> Result<OaHeader> {
    let mut t = None;
    let mut v = None;
    let mut k = None;
    let mut lambda = None;
    for (i, field) in line.split_whitespace().enumerate().skip(1) {
        let (key, value) = field.split_once('=').ok_or_else(|| {
            Error::parse(no, i + 1, format!("expected key=value, found {field:?}"))
        })?;
        let number: u64 = value
            .parse()
            .map_err(|_| Error::parse(no, i + 1, format!("bad number {value:?}")))?;
        let slot = match key {
            "t" => &mut t,
            "v" => &mut v,
            "k" => &mut k,
            "lambda" => &mut lambda,
            other => return Err(Error::parse(no, i + 1, format!("unknown key {other:?}"))),
        };
        *slot = Some(number);
    }
    let missing = |name| Error::parse(no, 1, format!("header is missing {name}"));
    Ok(OaHeader {
        t: t.ok_or_else(|| missing("t"))? as usize,
        v: u32::try_from(v.ok_or_else(|| missing("v"))?)
            .map_err(|_| Error::parse(no, 1, "v is too large"))?,
        k: k.ok_or_else(|| missing("k"))? as usize,
        lambda: lambda.ok_or_else(|| missing("lambda"))?,
    })
}

pub fn parse_oa_file(text: &str) -> Result<OaFile> {
    let mut header = None;
    let mut rows = Vec::new();
    let mut width = None;
    for (no, line) in content_lines(text) {
        if line.trim_start().starts_with("OA") {
            if header.is_some() || !rows.is_empty() {
                return Err(Error::parse(no, 1, "header must be the first line"));
            }
            header = Some(parse_header(line, no)?);
            continue;
        }
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(i, f)| parse_symbol(f, no, i + 1))
            .collect::<Result<Vec<_>>>()?;
        let expected = *width.get_or_insert(header.map_or(row.len(), |h: OaHeader| h.k));
        if row.len() != expected {
            return Err(Error::parse(
                no,
                row.len().min(expected) + 1,
                format!("expected {expected} symbols, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    Ok(OaFile { header, rows })
}

impl OaFile {
    /// Builds the array, taking each parameter from `overrides` when given
    /// and from the header otherwise.
    pub fn into_array(
        self,
        t: Option<usize>,
        v: Option<u32>,
        k: Option<usize>,
        lambda: Option<u64>,
    ) -> Result<OrthogonalArray> {
        let h = self.header;
        let need = |name: &str| {
            Error::InvalidParameters(format!("{name} is neither in the file header nor given"))
        };
        let t = t.or(h.map(|h| h.t)).ok_or_else(|| need("t"))?;
        let v = v.or(h.map(|h| h.v)).ok_or_else(|| need("v"))?;
        let k = k
            .or(h.map(|h| h.k))
            .or(self.rows.first().map(Vec::len))
            .ok_or_else(|| need("k"))?;
        let lambda = lambda
            .or(h.map(|h| h.lambda))
            .ok_or_else(|| need("lambda"))?;
        let rows = self
            .rows
            .into_iter()
            .map(|r| KTuple::new(r, v))
            .collect::<Result<Vec<_>>>()?;
        OrthogonalArray::new(t, v, k, lambda, rows)
    }
}

pub fn parse_oa(text: &str) -> Result<OrthogonalArray> {
    parse_oa_file(text)?.into_array(None, None, None, None)
}

pub fn write_oa(a: &OrthogonalArray) -> String {
    let mut out = format!(
        "OA t={} v={} k={} lambda={}\n",
        a.t(),
        a.v(),
        a.k(),
        a.lambda()
    );
    for x in a.rows() {
        let fields: Vec<String> = x.values().iter().map(u32::to_string).collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

/// Sparse integer matrix in coordinate form with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    /// `(row, col, value)`, rows sorted then columns.
    pub entries: Vec<(usize, usize, i64)>,
}

impl CoordinateMatrix {
    pub fn from_inclusion(m: &InclusionMatrix) -> Self {
        let entries = m
            .rows()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&c| (r, c as usize, 1)))
            .collect();
        CoordinateMatrix {
            n_rows: m.n_rows(),
            n_cols: m.n_cols(),
            entries,
        }
    }
}

pub fn write_matrix_market(m: &InclusionMatrix) -> String {
    let mut out = String::with_capacity(m.ones() * 8 + 64);
    let _ = writeln!(out, "{MATRIX_MARKET_HEADER}");
    let _ = writeln!(out, "{} {} {}", m.n_rows(), m.n_cols(), m.ones());
    for (r, row) in m.rows().enumerate() {
        for &c in row {
            let _ = writeln!(out, "{} {} 1", r + 1, c + 1);
        }
    }
    out
}

pub fn parse_matrix_market(text: &str) -> Result<CoordinateMatrix> {
    let mut lines = numbered_lines(text).into_iter();
    match lines.next() {
        Some((_, header)) if header.trim() == MATRIX_MARKET_HEADER => {}
        _ => {
            return Err(Error::parse(
                1,
                1,
                format!("expected {MATRIX_MARKET_HEADER:?}"),
            ))
        }
    }
    let mut lines = lines.filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('%'));
    let numbers = |no: usize, line: &str, count: usize| -> Result<Vec<i64>> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != count {
            return Err(Error::parse(
                no,
                fields.len().min(count) + 1,
                format!("expected {count} fields"),
            ));
        }
        fields
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.parse()
                    .map_err(|_| Error::parse(no, i + 1, format!("bad number {f:?}")))
            })
            .collect()
    };
    let (no, size_line) = lines
        .next()
        .ok_or_else(|| Error::parse(2, 1, "missing size line"))?;
    let size = numbers(no, size_line, 3)?;
    if size.iter().any(|&n| n < 0) {
        return Err(Error::parse(no, 1, "negative size"));
    }
    let (n_rows, n_cols, nnz) = (size[0] as usize, size[1] as usize, size[2] as usize);
    let mut entries = Vec::with_capacity(nnz);
    for (no, line) in lines {
        let e = numbers(no, line, 3)?;
        if !(1..=n_rows as i64).contains(&e[0]) {
            return Err(Error::parse(
                no,
                1,
                format!("row {} outside 1..={n_rows}", e[0]),
            ));
        }
        if !(1..=n_cols as i64).contains(&e[1]) {
            return Err(Error::parse(
                no,
                2,
                format!("column {} outside 1..={n_cols}", e[1]),
            ));
        }
        entries.push((e[0] as usize - 1, e[1] as usize - 1, e[2]));
    }
    if entries.len() != nnz {
        return Err(Error::parse(
            text.lines().count(),
            1,
            format!("size line announces {nnz} entries, found {}", entries.len()),
        ));
    }
    Ok(CoordinateMatrix {
        n_rows,
        n_cols,
        entries,
    })
}

/// Dense picture: one header line per tuple position listing that symbol of
/// every column, then one line per row with its key, `|`, and `1` or `.`.
pub fn write_dense(m: &InclusionMatrix) -> Result<String> {
    let cells = m.n_rows().saturating_mul(m.n_cols());
    if cells > DEFAULT_MAX_DENSE_CELLS {
        return Err(Error::SizeGuard {
            what: "cells in a dense dump",
            requested: cells as u128,
            limit: DEFAULT_MAX_DENSE_CELLS as u128,
        });
    }
    let width = (m.v() - 1).to_string().len();
    let labels: Vec<String> = (0..m.n_rows()).map(|r| m.row_key(r).to_string()).collect();
    let label_width = labels.iter().map(String::len).max().unwrap_or(0);
    let columns: Vec<KTuple> = KTuple::all(m.v(), m.k())?.collect();

    let mut out = String::new();
    for position in 1..=m.k() {
        let symbols: Vec<String> = columns
            .iter()
            .map(|x| format!("{:>width$}", x.at(position)))
            .collect();
        let _ = writeln!(out, "{:label_width$} | {}", "", symbols.join(" "));
    }
    for (r, label) in labels.iter().enumerate() {
        let cells: Vec<String> = (0..m.n_cols())
            .map(|c| format!("{:>width$}", if m.entry(r, c) { "1" } else { "." }))
            .collect();
        let _ = writeln!(out, "{label:label_width$} | {}", cells.join(" "));
    }
    Ok(out)
}
