use std::collections::HashMap;

use super::{EnergyKind, EnergyOp, EnergyValue};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::setcore::IntSet;

/// Dense tables are used for k-fold sums whose span is at most this.
const DENSE_SPAN_MAX: u64 = 1 << 22;

pub fn t_energy(a: &IntSet, k: u32, op: EnergyOp) -> Result<EnergyValue> {
    t_energy_with(a, k, op, &Limits::default())
}

/// `T_k(A) = |{(a₁…a_k, a′₁…a′_k) ∈ A^{2k} : a₁∘…∘a_k = a′₁∘…∘a′_k}|`,
/// so `T₁(A) = |A|` and `T₂ = E(A, A)`.
pub fn t_energy_with(a: &IntSet, k: u32, op: EnergyOp, limits: &Limits) -> Result<EnergyValue> {
    if k == 0 {
        return Err(Error::Domain("higher energy needs k >= 1".into()));
    }
    let n = a.len() as u128;
    let kind = match op {
        EnergyOp::Sum => EnergyKind::HigherAdditive { k },
        EnergyOp::Product => EnergyKind::HigherMultiplicative { k },
    };
    let diagonal_floor = n
        .checked_pow(k)
        .ok_or_else(|| Error::Overflow(format!("|A|^{k}")))?;
    let value = if a.is_empty() {
        0
    } else {
        match op {
            EnergyOp::Sum => additive_t(a, k, limits)?,
            EnergyOp::Product => multiplicative_t(a, k, limits)?,
        }
    };
    Ok(EnergyValue {
        kind,
        value,
        diagonal_floor,
        zero_in_input: op == EnergyOp::Product && a.contains_zero(),
    })
}

fn square_sum(mut counts: impl Iterator<Item = u128>) -> Result<u128> {
    counts.try_fold(0u128, |acc, c| {
        c.checked_mul(c)
            .and_then(|sq| acc.checked_add(sq))
            .ok_or_else(|| Error::Overflow("higher energy exceeds 2^128".into()))
    })
}

fn additive_t(a: &IntSet, k: u32, limits: &Limits) -> Result<u128> {
    let (lo, hi) = (a.min().unwrap(), a.max().unwrap());
    // The k-fold sums themselves must stay inside the 63-bit range.
    for bound in [lo, hi] {
        (bound as i128)
            .checked_mul(k as i128)
            .filter(|s| s.unsigned_abs() < 1u128 << 63)
            .ok_or_else(|| Error::Overflow(format!("{k}-fold sum of {bound}")))?;
    }
    let span = (hi as i128 - lo as i128) as u128 * k as u128;
    if span < DENSE_SPAN_MAX as u128 {
        return dense_additive_t(a, k, lo, span as usize, limits);
    }
    sparse_t(a, k, limits, |x, y| x.checked_add(y))
}

/// Translates A to start at 0 (energies are translation invariant) and
/// convolves in a flat table indexed by the shifted sum.
fn dense_additive_t(a: &IntSet, k: u32, lo: i64, span: usize, limits: &Limits) -> Result<u128> {
    let shifted: Vec<usize> = a
        .iter()
        .map(|x| (x as i128 - lo as i128) as usize)
        .collect();
    let mut cur = vec![0u128; span + 1];
    for &s in &shifted {
        cur[s] += 1;
    }
    let mut nonzero: Vec<usize> = shifted.clone();
    for _ in 1..k {
        limits.check_pairs("higher energy convolution", nonzero.len(), shifted.len())?;
        let mut next = vec![0u128; span + 1];
        for &x in &nonzero {
            let c = cur[x];
            for &s in &shifted {
                next[x + s] += c;
            }
        }
        nonzero = (0..next.len()).filter(|&i| next[i] != 0).collect();
        limits.check_support("higher energy support", nonzero.len() as u128)?;
        cur = next;
    }
    square_sum(nonzero.iter().map(|&i| cur[i]))
}

fn sparse_t(
    a: &IntSet,
    k: u32,
    limits: &Limits,
    op: impl Fn(i64, i64) -> Option<i64>,
) -> Result<u128> {
    let mut cur: HashMap<i64, u128> = a.iter().map(|x| (x, 1)).collect();
    for _ in 1..k {
        limits.check_pairs("higher energy convolution", cur.len(), a.len())?;
        let mut next: HashMap<i64, u128> = HashMap::with_capacity(cur.len() * 2);
        for (&x, &c) in &cur {
            for y in a.iter() {
                let z = op(x, y)
                    .filter(|&z| z != i64::MIN)
                    .ok_or_else(|| Error::Overflow(format!("{x} combined with {y}")))?;
                *next.entry(z).or_insert(0) += c;
            }
        }
        limits.check_support("higher energy support", next.len() as u128)?;
        cur = next;
    }
    square_sum(cur.into_values())
}

fn multiplicative_t(a: &IntSet, k: u32, limits: &Limits) -> Result<u128> {
    sparse_t(a, k, limits, |x, y| x.checked_mul(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(t_energy(&set(&[0, 1]), 2, EnergyOp::Sum).unwrap().value, 6);
        let a = set(&[3, -8, 11, 40]);
        assert_eq!(t_energy(&a, 1, EnergyOp::Sum).unwrap().value, 4);
        assert_eq!(t_energy(&a, 1, EnergyOp::Product).unwrap().value, 4);
        let g = set(&[1, 2, 4, 8]);
        assert_eq!(t_energy(&g, 2, EnergyOp::Product).unwrap().value, 44);
        assert!(t_energy(&g, 0, EnergyOp::Sum).is_err());
        assert_eq!(
            t_energy(&IntSet::empty(), 3, EnergyOp::Sum).unwrap().value,
            0
        );
    }

    #[test]
    fn dense_and_sparse_agree() {
        let a = set(&[-5, 0, 2, 9, 30, 31]);
        let limits = Limits::default();
        for k in 1..=4 {
            let lo = a.min().unwrap();
            let span = ((a.max().unwrap() - lo) as usize) * k as usize;
            let dense = dense_additive_t(&a, k, lo, span, &limits).unwrap();
            let sparse = sparse_t(&a, k, &limits, |x, y| x.checked_add(y)).unwrap();
            assert_eq!(dense, sparse, "k = {k}");
        }
        // Wide span takes the sparse route.
        let wide = set(&[0, 1 << 40, 3 << 40, 1]);
        let brute = {
            let v = wide.as_slice();
            let mut c = 0u128;
            for t in 0..(4usize.pow(4)) {
                let idx = [t % 4, t / 4 % 4, t / 16 % 4, t / 64];
                if v[idx[0]] + v[idx[1]] == v[idx[2]] + v[idx[3]] {
                    c += 1;
                }
            }
            c
        };
        assert_eq!(t_energy(&wide, 2, EnergyOp::Sum).unwrap().value, brute);
    }

    #[test]
    fn overflow_is_reported() {
        let a = set(&[1 << 40, 3]);
        assert!(matches!(
            t_energy(&a, 2, EnergyOp::Product),
            Err(Error::Overflow(_))
        ));
        let a = set(&[i64::MAX / 2, 0]);
        assert!(matches!(
            t_energy(&a, 3, EnergyOp::Sum),
            Err(Error::Overflow(_))
        ));
    }
}
