//! Prime sieving, trial-division factorization, gcd and truncated `ζ(2α)`.
//!
//! A [`PrimeTable`] is built once and shared; everything else here is a
//! pure function of it.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::setcore::IntSet;

/// Limits at or below this use a single flat sieve.
const FLAT_SIEVE_MAX: u64 = 1_000_000;
/// Segment length for the segmented sieve.
const SEGMENT_LEN: u64 = 1 << 18;

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `p` with `lo <= p < hi`, clipped to the table.
    pub fn primes_between(&self, lo: u64, hi: u64) -> &[u64] {
        let start = self.primes.partition_point(|&p| p < lo);
        let end = self.primes.partition_point(|&p| p < hi);
        &self.primes[start..end.max(start)]
    }

    /// Membership by binary search. Only meaningful for `n <= limit`.
    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// `π(x)` for `x <= limit`.
    pub fn count_up_to(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }
}

/// Prime factorization `value = Π p^e`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Recomputes the product of the prime powers.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }
}

/// Truncated `ζ(2α) = Σ_{t ≤ n_max} t^{-2α}` with an integral tail bound, so
/// that the full value lies in `[value, value + tail_bound]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialZeta {
    pub value: f64,
    pub tail_bound: f64,
}

pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_with(limit, &Limits::default())
}

pub fn sieve_primes_with(limit: u64, limits: &Limits) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::Bounds {
            value: limit as i128,
            reason: "sieve limit must be at least 2".into(),
        });
    }
    if limit > limits.sieve_ceiling {
        return Err(Error::Bounds {
            value: limit as i128,
            reason: format!("sieve limit exceeds ceiling {}", limits.sieve_ceiling),
        });
    }
    let primes = if limit <= FLAT_SIEVE_MAX {
        flat_sieve(limit)
    } else {
        segmented_sieve(limit)
    };
    Ok(PrimeTable { limit, primes })
}

fn flat_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn segmented_sieve(limit: u64) -> Vec<u64> {
    let root = integer_sqrt(limit);
    let base = flat_sieve(root.max(2));
    let mut primes = base.clone();
    let mut seg = vec![false; SEGMENT_LEN as usize];
    let mut lo = root + 1;
    while lo <= limit {
        let hi = (lo + SEGMENT_LEN - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        seg[..len].iter_mut().for_each(|c| *c = false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = p * p.max(lo.div_ceil(p));
            while start <= hi {
                seg[(start - lo) as usize] = true;
                start += p;
            }
        }
        primes.extend(
            seg[..len]
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| lo + i as u64),
        );
        lo = hi + 1;
    }
    primes
}

pub(crate) fn integer_sqrt(n: u64) -> u64 {
    n.isqrt()
}

/// `𝒫 ∩ [lo, hi)` as a set.
pub fn primes_in(lo: u64, hi: u64, table: &PrimeTable) -> Result<IntSet> {
    if lo < 2 || lo >= hi {
        return Err(Error::Bounds {
            value: lo as i128,
            reason: format!("need 2 <= lo < hi, got [{lo}, {hi})"),
        });
    }
    if hi > table.limit + 1 {
        return Err(Error::Bounds {
            value: hi as i128,
            reason: format!("range end exceeds table limit {} + 1", table.limit),
        });
    }
    Ok(IntSet::from_sorted_unchecked(
        table
            .primes_between(lo, hi)
            .iter()
            .map(|&p| p as i64)
            .collect(),
    ))
}

/// Trial division against the table.
pub fn factorize(n: u64, table: &PrimeTable) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::UndefinedInput("cannot factorize 0".into()));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut exhausted = true;
    for &p in &table.primes {
        if p.saturating_mul(p) > rest {
            exhausted = false;
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        // Either the loop stopped at p² > rest (so rest is prime), or the
        // table ran out with rest still unresolved.
        let prime_cofactor = !exhausted || table.contains(rest);
        if !prime_cofactor || rest > table.limit {
            return Err(Error::IncompleteFactorization {
                n,
                cofactor: rest,
                limit: table.limit,
            });
        }
        factors.push((rest, 1));
    }
    Ok(Factorization { value: n, factors })
}

pub fn partial_zeta(alpha: f64, n_max: u64) -> Result<PartialZeta> {
    let s = 2.0 * alpha;
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Divergence { two_alpha: s });
    }
    if n_max == 0 {
        return Err(Error::Bounds {
            value: 0,
            reason: "n_max must be positive".into(),
        });
    }
    // Smallest terms first.
    let value = (1..=n_max).rev().map(|t| (t as f64).powf(-s)).sum::<f64>();
    let tail_bound = (n_max as f64).powf(1.0 - s) / (s - 1.0);
    Ok(PartialZeta { value, tail_bound })
}

pub fn gcd(a: i64, b: i64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::UndefinedInput("gcd(0, 0) is undefined".into()));
    }
    Ok(gcd_u64(a.unsigned_abs(), b.unsigned_abs()))
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
