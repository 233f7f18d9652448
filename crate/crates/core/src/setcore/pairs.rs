//! Pair enumeration over `A × B` for the three binary operations.
//!
//! Two paths: a checked `i64` path that materializes every pair key (used by
//! sum/product sets and representation functions), and a counting kernel
//! that computes `Σ_x r(x)²` over exact `i128` keys without ever holding all
//! `|A|·|B|` keys at once.
//!
//! The kernel relies on each row `j ↦ key(a_i, b_j)` being monotone in `j`
//! (B is sorted), which holds for sums, differences and products. The key
//! range is cut at splitters taken from a deterministic sample of pair keys;
//! each bucket gathers its keys from every row by binary search, sorts them
//! and accumulates squared run lengths. A key always lands in exactly one
//! bucket, so the per-bucket totals add up to the exact answer independent
//! of bucket layout and thread schedule.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::IntSet;
use crate::error::{Error, Result};

/// Target number of keys held by one bucket.
const BUCKET_TARGET: u64 = 1 << 21;
/// Sampled keys per bucket when choosing splitters.
const SAMPLES_PER_BUCKET: u64 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairOp {
    Sum,
    Difference,
    Product,
}

impl PairOp {
    pub(crate) fn set_name(self) -> &'static str {
        match self {
            PairOp::Sum => "sumset",
            PairOp::Difference => "difference set",
            PairOp::Product => "product set",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            PairOp::Sum => "+",
            PairOp::Difference => "-",
            PairOp::Product => "*",
        }
    }

    #[inline]
    pub(crate) fn apply_checked(self, a: i64, b: i64) -> Option<i64> {
        match self {
            PairOp::Sum => a.checked_add(b),
            PairOp::Difference => a.checked_sub(b),
            PairOp::Product => a.checked_mul(b),
        }
        .filter(|&x| x != i64::MIN)
    }

    #[inline]
    fn apply_wide(self, a: i64, b: i64) -> i128 {
        let (a, b) = (a as i128, b as i128);
        match self {
            PairOp::Sum => a + b,
            PairOp::Difference => a - b,
            PairOp::Product => a * b,
        }
    }

    fn direction(self, a: i64) -> Direction {
        match self {
            PairOp::Sum => Direction::Ascending,
            PairOp::Difference => Direction::Descending,
            PairOp::Product if a > 0 => Direction::Ascending,
            PairOp::Product if a < 0 => Direction::Descending,
            PairOp::Product => Direction::Constant,
        }
    }
}

impl std::fmt::Display for PairOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PairOp::Sum => "sum",
            PairOp::Difference => "difference",
            PairOp::Product => "product",
        })
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Ascending,
    Descending,
    Constant,
}

/// Every key `a ∘ b` in row-major order, failing on the first pair whose
/// result leaves the 63-bit magnitude range.
pub(crate) fn checked_keys(a: &IntSet, b: &IntSet, op: PairOp) -> Result<Vec<i64>> {
    let mut keys = Vec::with_capacity(a.len() * b.len());
    for &x in a.as_slice() {
        for &y in b.as_slice() {
            match op.apply_checked(x, y) {
                Some(k) => keys.push(k),
                None => {
                    return Err(Error::Overflow(format!(
                        "{x} {} {y} leaves the 63-bit range",
                        op.symbol()
                    )))
                }
            }
        }
    }
    Ok(keys)
}

/// Index range of row `a` whose keys fall in `[lo, hi)`.
fn row_range(a: i64, b: &[i64], op: PairOp, lo: i128, hi: i128) -> (usize, usize) {
    match op.direction(a) {
        Direction::Ascending => (
            b.partition_point(|&y| op.apply_wide(a, y) < lo),
            b.partition_point(|&y| op.apply_wide(a, y) < hi),
        ),
        Direction::Descending => (
            b.partition_point(|&y| op.apply_wide(a, y) >= hi),
            b.partition_point(|&y| op.apply_wide(a, y) >= lo),
        ),
        Direction::Constant => {
            let c = op.apply_wide(a, 0);
            if lo <= c && c < hi {
                (0, b.len())
            } else {
                (0, 0)
            }
        }
    }
}

/// Multiplicity statistics of the pair keys.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct KeyStats {
    /// `Σ_x r(x)²`.
    pub squares: u128,
    /// `|{x : r(x) > 0}|`.
    pub distinct: u128,
}

impl std::ops::Add for KeyStats {
    type Output = KeyStats;

    fn add(self, o: KeyStats) -> KeyStats {
        KeyStats {
            squares: self.squares + o.squares,
            distinct: self.distinct + o.distinct,
        }
    }
}

fn run_stats(keys: &mut [i128]) -> KeyStats {
    keys.sort_unstable();
    let mut stats = KeyStats::default();
    let mut i = 0;
    while i < keys.len() {
        let mut j = i + 1;
        while j < keys.len() && keys[j] == keys[i] {
            j += 1;
        }
        let run = (j - i) as u128;
        stats.squares += run * run;
        stats.distinct += 1;
        i = j;
    }
    stats
}

fn splitters(a: &[i64], b: &[i64], op: PairOp, buckets: u64) -> Vec<i128> {
    let total = a.len() as u64 * b.len() as u64;
    let count = (buckets * SAMPLES_PER_BUCKET).min(total);
    let m = b.len() as u64;
    let mut sample: Vec<i128> = (0..count)
        .map(|s| {
            let idx = (s as u128 * total as u128 / count as u128) as u64;
            op.apply_wide(a[(idx / m) as usize], b[(idx % m) as usize])
        })
        .collect();
    sample.sort_unstable();
    let mut cuts: Vec<i128> = (1..buckets)
        .map(|k| sample[(k * count / buckets) as usize])
        .collect();
    cuts.dedup();
    cuts
}

/// `Σ_x r(x)²` where `r(x) = |{(a, b) ∈ A × B : a ∘ b = x}|`, exactly.
pub(crate) fn sum_of_squared_multiplicities(a: &[i64], b: &[i64], op: PairOp) -> u128 {
    pair_key_stats(a, b, op).squares
}

/// Exact statistics of `r(x)` over all `i128` keys `a ∘ b`.
pub(crate) fn pair_key_stats(a: &[i64], b: &[i64], op: PairOp) -> KeyStats {
    let total = a.len() as u64 * b.len() as u64;
    if total == 0 {
        return KeyStats::default();
    }
    if total <= BUCKET_TARGET {
        let mut keys: Vec<i128> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| op.apply_wide(x, y)))
            .collect();
        return run_stats(&mut keys);
    }
    let cuts = splitters(a, b, op, total.div_ceil(BUCKET_TARGET));
    let bounds: Vec<(i128, i128)> = std::iter::once(i128::MIN)
        .chain(cuts.iter().copied())
        .zip(cuts.iter().copied().chain(std::iter::once(i128::MAX)))
        .collect();
    bounds
        .par_iter()
        .map(|&(lo, hi)| {
            let mut keys = Vec::new();
            for &x in a {
                let (s, e) = row_range(x, b, op, lo, hi);
                keys.extend(b[s..e].iter().map(|&y| op.apply_wide(x, y)));
            }
            run_stats(&mut keys)
        })
        .reduce(KeyStats::default, |x, y| x + y)
}
