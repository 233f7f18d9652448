//! Finite integer sets, their sum/difference/product sets and
//! representation functions, and a small grammar for generating the
//! structured sets used throughout the experiments.

mod generator;
mod io;
pub(crate) mod pairs;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;

pub use generator::{generate, generate_with, parse_generator, GeneratorSpec};
pub use io::{read_set_file, write_set_file};
pub use pairs::PairOp;

/// A finite set of integers, stored sorted and without duplicates.
///
/// Elements are restricted to magnitude below 2⁶³, i.e. `i64::MIN` is
/// excluded so that negation never overflows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct IntSet(Vec<i64>);

impl IntSet {
    pub fn new(elements: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut v: Vec<i64> = elements.into_iter().collect();
        if v.contains(&i64::MIN) {
            return Err(Error::Overflow(
                "set element -2^63 has magnitude 2^63".into(),
            ));
        }
        v.sort_unstable();
        v.dedup();
        Ok(IntSet(v))
    }

    pub fn empty() -> Self {
        IntSet(Vec::new())
    }

    /// `[1, n]`.
    pub fn interval(n: u64) -> Self {
        IntSet((1..=n as i64).collect())
    }

    /// Caller guarantees strictly increasing order and no `i64::MIN`.
    pub(crate) fn from_sorted_unchecked(v: Vec<i64>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!v.contains(&i64::MIN));
        IntSet(v)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0)
    }

    /// `A + t`.
    pub fn translate(&self, t: i64) -> Result<IntSet> {
        let v = self
            .0
            .iter()
            .map(|&a| {
                a.checked_add(t)
                    .filter(|&x| x != i64::MIN)
                    .ok_or_else(|| Error::Overflow(format!("{a} + {t}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntSet(v))
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = &'a i64;
    type IntoIter = std::slice::Iter<'a, i64>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Multiplicities `r(x)` of a binary operation over `A × B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepFunction {
    op: PairOp,
    counts: Vec<(i64, u64)>,
}

impl RepFunction {
    pub fn op(&self) -> PairOp {
        self.op
    }

    pub fn get(&self, x: i64) -> u64 {
        self.counts
            .binary_search_by_key(&x, |&(k, _)| k)
            .map_or(0, |i| self.counts[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().copied()
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// `Σ_x r(x)`, which equals `|A|·|B|`.
    pub fn mass(&self) -> u128 {
        self.counts.iter().map(|&(_, c)| c as u128).sum()
    }

    /// `Σ_x r(x)²`.
    pub fn sum_of_squares(&self) -> u128 {
        self.counts
            .iter()
            .map(|&(_, c)| (c as u128) * (c as u128))
            .sum()
    }

    /// The support as a set.
    pub fn support(&self) -> IntSet {
        IntSet::from_sorted_unchecked(self.counts.iter().map(|&(k, _)| k).collect())
    }
}

pub fn rep_function(a: &IntSet, b: &IntSet, op: PairOp) -> Result<RepFunction> {
    rep_function_with(a, b, op, &Limits::default())
}

pub fn rep_function_with(
    a: &IntSet,
    b: &IntSet,
    op: PairOp,
    limits: &Limits,
) -> Result<RepFunction> {
    limits.check_pairs("representation function", a.len(), b.len())?;
    let mut keys = pairs::checked_keys(a, b, op)?;
    keys.sort_unstable();
    let mut counts: Vec<(i64, u64)> = Vec::new();
    for k in keys {
        match counts.last_mut() {
            Some((last, c)) if *last == k => *c += 1,
            _ => counts.push((k, 1)),
        }
    }
    Ok(RepFunction { op, counts })
}

fn binary_set(a: &IntSet, b: &IntSet, op: PairOp, limits: &Limits) -> Result<IntSet> {
    limits.check_pairs(op.set_name(), a.len(), b.len())?;
    let mut keys = pairs::checked_keys(a, b, op)?;
    keys.sort_unstable();
    keys.dedup();
    Ok(IntSet::from_sorted_unchecked(keys))
}

pub fn sumset(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    binary_set(a, b, PairOp::Sum, &Limits::default())
}

pub fn difference_set(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    binary_set(a, b, PairOp::Difference, &Limits::default())
}

pub fn product_set(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    binary_set(a, b, PairOp::Product, &Limits::default())
}

pub fn sumset_with(a: &IntSet, b: &IntSet, limits: &Limits) -> Result<IntSet> {
    binary_set(a, b, PairOp::Sum, limits)
}

pub fn difference_set_with(a: &IntSet, b: &IntSet, limits: &Limits) -> Result<IntSet> {
    binary_set(a, b, PairOp::Difference, limits)
}

pub fn product_set_with(a: &IntSet, b: &IntSet, limits: &Limits) -> Result<IntSet> {
    binary_set(a, b, PairOp::Product, limits)
}

/// `|A ∘ B|`, counted over exact 128-bit keys so that it never overflows.
pub fn pair_set_size(a: &IntSet, b: &IntSet, op: PairOp, limits: &Limits) -> Result<u128> {
    limits.check_pairs(op.set_name(), a.len(), b.len())?;
    Ok(pairs::pair_key_stats(a.as_slice(), b.as_slice(), op).distinct)
}

/// `nA − mA`, the set of sums of `n` elements minus sums of `m` elements.
/// `n = m = 0` gives `{0}`.
pub fn signed_sumset(a: &IntSet, n: usize, m: usize, limits: &Limits) -> Result<IntSet> {
    let mut acc = IntSet::from_sorted_unchecked(vec![0]);
    if a.is_empty() && n + m > 0 {
        return Ok(IntSet::empty());
    }
    for _ in 0..n {
        acc = sumset_with(&acc, a, limits)?;
        limits.check_cardinality("iterated sumset", acc.len() as u128)?;
    }
    for _ in 0..m {
        acc = difference_set_with(&acc, a, limits)?;
        limits.check_cardinality("iterated sumset", acc.len() as u128)?;
    }
    Ok(acc)
}

/// `d·A`.
pub fn dilate(a: &IntSet, d: i64) -> Result<IntSet> {
    if d == 0 {
        return Err(Error::Domain("degenerate dilation by 0".into()));
    }
    let mut v =
        a.0.iter()
            .map(|&x| {
                x.checked_mul(d)
                    .filter(|&y| y != i64::MIN)
                    .ok_or_else(|| Error::Overflow(format!("dilation {d} * {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
    if d < 0 {
        v.reverse();
    }
    Ok(IntSet::from_sorted_unchecked(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{primes_in, sieve_primes};

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn construction_sorts_and_dedups() {
        let s = set(&[3, 1, 2, 3, 1]);
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert!(IntSet::new([i64::MIN]).is_err());
        assert_eq!(s.to_string(), "{1,2,3}");
    }

    #[test]
    fn binary_sets() {
        assert_eq!(
            sumset(&set(&[0, 1]), &set(&[0, 1])).unwrap().as_slice(),
            &[0, 1, 2]
        );
        assert_eq!(
            product_set(&set(&[2, 3]), &set(&[3, 4]))
                .unwrap()
                .as_slice(),
            &[6, 8, 9, 12]
        );
        assert_eq!(
            difference_set(&set(&[1, 2, 3]), &set(&[1, 2, 3]))
                .unwrap()
                .as_slice(),
            &[-2, -1, 0, 1, 2]
        );
        assert!(sumset(&IntSet::empty(), &set(&[1])).unwrap().is_empty());
    }

    #[test]
    fn overflow_names_the_pair() {
        let big = set(&[i64::MAX]);
        let err = sumset(&big, &set(&[1])).unwrap_err();
        assert!(matches!(err, Error::Overflow(ref m) if m.contains(&i64::MAX.to_string())));
        assert!(product_set(&set(&[1 << 40]), &set(&[1 << 30])).is_err());
        // -2^63 is excluded even though it fits in i64.
        assert!(product_set(&set(&[-(1 << 62)]), &set(&[2])).is_err());
    }

    #[test]
    fn rep_function_examples() {
        let r = rep_function(&set(&[1, 2]), &set(&[1, 2]), PairOp::Sum).unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![(2, 1), (3, 2), (4, 1)]);
        let r = rep_function(&set(&[1, 2, 4]), &set(&[1]), PairOp::Product).unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![(1, 1), (2, 1), (4, 1)]);
        let a = set(&[1, 2, 3]);
        let r = rep_function(&a, &a, PairOp::Difference).unwrap();
        assert_eq!(r.get(0), a.len() as u64);
        assert_eq!(r.get(2), 1);
        assert_eq!(r.get(5), 0);
    }

    #[test]
    fn rep_function_ceiling() {
        let limits = Limits {
            pair_ceiling: 10,
            ..Limits::default()
        };
        let a = IntSet::interval(4);
        let err = rep_function_with(&a, &a, PairOp::Sum, &limits).unwrap_err();
        assert!(err.to_string().contains("ENERGY_LAB_CEILING"));
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(dilate(&set(&[1, 2, 3]), 2).unwrap().as_slice(), &[2, 4, 6]);
        assert_eq!(
            dilate(&set(&[2, 3, 5]), -1).unwrap().as_slice(),
            &[-5, -3, -2]
        );
        let t = sieve_primes(10).unwrap();
        let p = primes_in(2, 11, &t).unwrap();
        assert_eq!(dilate(&p, 7).unwrap().as_slice(), &[14, 21, 35, 49]);
        assert!(matches!(dilate(&p, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn signed_sumsets() {
        let a = set(&[0, 1]);
        let limits = Limits::default();
        assert_eq!(signed_sumset(&a, 0, 0, &limits).unwrap().as_slice(), &[0]);
        assert_eq!(
            signed_sumset(&a, 2, 0, &limits).unwrap().as_slice(),
            &[0, 1, 2]
        );
        assert_eq!(
            signed_sumset(&a, 1, 1, &limits).unwrap().as_slice(),
            &[-1, 0, 1]
        );
        assert_eq!(
            signed_sumset(&a, 0, 2, &limits).unwrap().as_slice(),
            &[-2, -1, 0]
        );
    }

    mod props {
        use super::*;
        use proptest::collection::vec;
        use proptest::prelude::*;

        fn small_set() -> impl Strategy<Value = IntSet> {
            vec(-1000i64..1000, 1..40).prop_map(|v| IntSet::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn sumset_at_least_max(a in small_set(), b in small_set()) {
                let s = sumset(&a, &b).unwrap();
                prop_assert!(s.len() >= a.len().max(b.len()));
                let single = IntSet::new([b.as_slice()[0]]).unwrap();
                prop_assert_eq!(sumset(&a, &single).unwrap().len(), a.len());
            }

            #[test]
            fn mass_conservation(a in small_set(), b in small_set()) {
                for op in [PairOp::Sum, PairOp::Difference, PairOp::Product] {
                    let r = rep_function(&a, &b, op).unwrap();
                    prop_assert_eq!(r.mass(), (a.len() * b.len()) as u128);
                    prop_assert!(r.iter().all(|(_, c)| c >= 1));
                }
            }

            #[test]
            fn dilation_is_bijective(a in small_set(), d in -50i64..50) {
                prop_assume!(d != 0);
                prop_assert_eq!(dilate(&a, d).unwrap().len(), a.len());
            }
        }
    }
}
