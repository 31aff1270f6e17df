//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use oatrade::formats;
use oatrade::{LatinTrade, PartialLatinSquare};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture exists")
}

pub fn fixture_trade(name: &str) -> LatinTrade {
    formats::parse_trade(&fixture(name)).expect("fixture parses")
}

/// The 27x27 picture of `M_2(3,3)`: `true` for `1`, `false` for `.`.
pub fn m2_v3_k3_bits() -> Vec<Vec<bool>> {
    fixture("m2_v3_k3.txt")
        .lines()
        .map(|l| l.split_whitespace().map(|f| f == "1").collect())
        .collect()
}

/// A row-cycle trade in an isotope of the cyclic Latin square of order `v`.
///
/// In the cyclic square rows `r` and `r + d` differ by a shift, so swapping
/// their symbols along the columns `c, c + d, c + 2d, ...` closes up after
/// `v / gcd(v, d)` steps. Random row, column and symbol permutations are then
/// applied to both halves, and half the time the result is transposed into a
/// column cycle.
pub fn random_row_cycle_trade(v: usize, rng: &mut impl Rng) -> LatinTrade {
    assert!(v >= 2);
    let r1 = rng.gen_range(0..v);
    let d = rng.gen_range(1..v);
    let r2 = (r1 + d) % v;
    let c0 = rng.gen_range(0..v);
    let mut columns = vec![c0];
    let mut c = (c0 + d) % v;
    while c != c0 {
        columns.push(c);
        c = (c + d) % v;
    }

    let mut rows: Vec<usize> = (0..v).collect();
    let mut cols: Vec<usize> = (0..v).collect();
    let mut syms: Vec<u32> = (0..v as u32).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    syms.shuffle(rng);

    let transpose = rng.gen_bool(0.5);
    let place = |r: usize, c: usize| {
        if transpose {
            (cols[c], rows[r])
        } else {
            (rows[r], cols[c])
        }
    };
    let cell = |r: usize, c: usize| syms[(r + c) % v];
    let mut p = PartialLatinSquare::new(v).unwrap();
    let mut q = PartialLatinSquare::new(v).unwrap();
    for &c in &columns {
        for (square, a, b) in [(&mut p, r1, r2), (&mut q, r2, r1)] {
            let (i, j) = place(r1, c);
            square.insert(i, j, cell(a, c)).unwrap();
            let (i, j) = place(r2, c);
            square.insert(i, j, cell(b, c)).unwrap();
        }
    }
    LatinTrade::new(p, q).unwrap()
}
