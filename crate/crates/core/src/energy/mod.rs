//! Exact additive, multiplicative and higher energies.
//!
//! Integer energies are exact 128-bit counts. Pair energies never overflow:
//! keys are formed in `i128`, where any sum or product of two 63-bit values
//! fits. Higher energies build `r_{kA}` by repeated convolution with checked
//! 63-bit arithmetic, as k-fold sums and products can leave the range.

mod higher;
mod weight;
mod weighted;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::limits::Limits;
use crate::setcore::pairs::sum_of_squared_multiplicities;
use crate::setcore::{IntSet, PairOp};

pub use higher::{t_energy, t_energy_with};
pub use weight::{read_weight_file, write_weight_file, FiniteFunction, Weight};
pub use weighted::{weighted_energy, weighted_pair_energy, weighted_t_energy};

/// Which of the two group operations an energy counts coincidences of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyOp {
    Sum,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnergyKind {
    Additive,
    Multiplicative,
    HigherAdditive { k: u32 },
    HigherMultiplicative { k: u32 },
}

/// An exact energy together with its trivial diagonal lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnergyValue {
    pub kind: EnergyKind,
    pub value: u128,
    /// Count contributed by the diagonal tuples alone.
    pub diagonal_floor: u128,
    /// Set for multiplicative kinds when 0 is an element of an input.
    pub zero_in_input: bool,
}

pub fn additive_energy(a: &IntSet, b: &IntSet) -> Result<EnergyValue> {
    additive_energy_with(a, b, &Limits::default())
}

/// `E⁺(A, B) = |{(a₁, a₂, b₁, b₂) : a₁ + b₁ = a₂ + b₂}| = Σ_x r_{A+B}(x)²`.
pub fn additive_energy_with(a: &IntSet, b: &IntSet, limits: &Limits) -> Result<EnergyValue> {
    limits.check_pairs("additive energy", a.len(), b.len())?;
    Ok(EnergyValue {
        kind: EnergyKind::Additive,
        value: sum_of_squared_multiplicities(a.as_slice(), b.as_slice(), PairOp::Sum),
        diagonal_floor: a.len() as u128 * b.len() as u128,
        zero_in_input: false,
    })
}

pub fn multiplicative_energy(a: &IntSet, b: &IntSet) -> Result<EnergyValue> {
    multiplicative_energy_with(a, b, &Limits::default())
}

/// `E×(A, B) = Σ_x r_{AB}(x)²`. Zero is allowed; it merges every product
/// with a zero factor, which `zero_in_input` reports.
pub fn multiplicative_energy_with(a: &IntSet, b: &IntSet, limits: &Limits) -> Result<EnergyValue> {
    limits.check_pairs("multiplicative energy", a.len(), b.len())?;
    Ok(EnergyValue {
        kind: EnergyKind::Multiplicative,
        value: sum_of_squared_multiplicities(a.as_slice(), b.as_slice(), PairOp::Product),
        diagonal_floor: a.len() as u128 * b.len() as u128,
        zero_in_input: a.contains_zero() || b.contains_zero(),
    })
}

/// Longest progression `{d, 2d, …, nd}` contained in a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroBasedAp {
    pub length: u64,
    /// Witness step; 0 when `length` is 0.
    pub step: i64,
}

/// Searches `d ∈ S ∖ {0}`. Ties go to the smallest `|d|`, positive first.
pub fn longest_zero_based_ap(s: &IntSet) -> ZeroBasedAp {
    let mut steps: Vec<i64> = s.iter().filter(|&d| d != 0).collect();
    steps.sort_by_key(|&d| (d.unsigned_abs(), d < 0));
    let mut best = ZeroBasedAp { length: 0, step: 0 };
    for d in steps {
        let mut n: u64 = 1;
        while let Some(next) = (n as i64 + 1).checked_mul(d) {
            if !s.contains(next) {
                break;
            }
            n += 1;
        }
        if n > best.length {
            best = ZeroBasedAp { length: n, step: d };
        }
    }
    best
}

pub fn incidence_count(f_image: &IntSet, b: &IntSet, c: &IntSet) -> Result<u64> {
    incidence_count_with(f_image, b, c, &Limits::default())
}

/// `|{(v, b, c) ∈ f(I) × B × C : v + b = c}| = Σ_x r_{f(I)+B}(x)·1_C(x)`.
pub fn incidence_count_with(
    f_image: &IntSet,
    b: &IntSet,
    c: &IntSet,
    limits: &Limits,
) -> Result<u64> {
    limits.check_pairs("incidence count", f_image.len(), b.len())?;
    let bs = b.as_slice();
    let cs = c.as_slice();
    Ok(f_image
        .as_slice()
        .par_iter()
        .map(|&v| {
            bs.iter()
                .filter(|&&y| {
                    let s = v as i128 + y as i128;
                    cs.binary_search_by(|&z| (z as i128).cmp(&s)).is_ok()
                })
                .count() as u64
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{primes_in, sieve_primes};

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn additive_examples() {
        assert_eq!(
            additive_energy(&set(&[1, 2]), &set(&[1, 2])).unwrap().value,
            6
        );
        let i3 = IntSet::interval(3);
        let e = additive_energy(&i3, &i3).unwrap();
        assert_eq!(e.value, 19);
        assert_eq!(e.value, 3 * (2 * 9 + 1) / 3);
        let b = set(&[-7, 2, 3, 100]);
        assert_eq!(
            additive_energy(&set(&[5]), &b).unwrap().value,
            b.len() as u128
        );
        assert_eq!(additive_energy(&IntSet::empty(), &b).unwrap().value, 0);
    }

    #[test]
    fn multiplicative_examples() {
        let g = set(&[1, 2, 4]);
        assert_eq!(multiplicative_energy(&g, &g).unwrap().value, 19);
        let t = sieve_primes(20).unwrap();
        let p = primes_in(2, 21, &t).unwrap();
        let pow2 = IntSet::new((0..10).map(|i| 1i64 << i)).unwrap();
        let e = multiplicative_energy(&p, &pow2).unwrap();
        assert_eq!(e.value, 80);
        assert_eq!(e.value, e.diagonal_floor);
        assert_eq!(
            multiplicative_energy(&set(&[1]), &set(&[3, 9]))
                .unwrap()
                .value,
            2
        );
    }

    #[test]
    fn zero_is_flagged() {
        let e = multiplicative_energy(&set(&[0, 1]), &set(&[2, 3])).unwrap();
        // 0·2 = 0·3 contributes (0,0,2,3),(0,0,3,2) beyond the diagonal.
        assert_eq!(e.value, 6);
        assert!(e.zero_in_input);
        assert!(
            !multiplicative_energy(&set(&[1]), &set(&[2]))
                .unwrap()
                .zero_in_input
        );
    }

    #[test]
    fn pair_ceiling_enforced() {
        let limits = Limits {
            pair_ceiling: 99,
            ..Limits::default()
        };
        let a = IntSet::interval(10);
        assert!(additive_energy_with(&a, &a, &limits).is_err());
        let a = IntSet::interval(9);
        assert!(additive_energy_with(&a, &a, &limits).is_ok());
    }

    #[test]
    fn zero_based_ap_examples() {
        assert_eq!(
            longest_zero_based_ap(&set(&[2, 4, 6, 7])),
            ZeroBasedAp { length: 3, step: 2 }
        );
        assert_eq!(
            longest_zero_based_ap(&set(&[1])),
            ZeroBasedAp { length: 1, step: 1 }
        );
        let grid =
            IntSet::new((0..16).flat_map(|a| (0..16).map(move |b| 2i64.pow(a) * 3i64.pow(b))))
                .unwrap();
        assert_eq!(
            longest_zero_based_ap(&grid),
            ZeroBasedAp { length: 4, step: 1 }
        );
        assert_eq!(longest_zero_based_ap(&set(&[0])).length, 0);
        assert_eq!(longest_zero_based_ap(&IntSet::empty()).length, 0);
        assert_eq!(
            longest_zero_based_ap(&set(&[-3, -6, -9, 3])),
            ZeroBasedAp {
                length: 3,
                step: -3
            }
        );
        assert_eq!(longest_zero_based_ap(&set(&[i64::MAX])).length, 1);
    }

    #[test]
    fn incidence_examples() {
        let fi = set(&[1, 4]);
        assert_eq!(
            incidence_count(&fi, &set(&[0, 1]), &set(&[1, 2, 4, 5])).unwrap(),
            4
        );
        assert_eq!(
            incidence_count(&fi, &set(&[0, 1]), &set(&[100])).unwrap(),
            0
        );
        assert_eq!(
            incidence_count(&fi, &set(&[0]), &fi).unwrap(),
            fi.len() as u64
        );
        let big = set(&[i64::MAX]);
        assert_eq!(incidence_count(&big, &big, &big).unwrap(), 0);
    }

    mod props {
        use super::*;
        use proptest::collection::vec;
        use proptest::prelude::*;

        fn small_set() -> impl Strategy<Value = IntSet> {
            vec(-200i64..200, 1..64).prop_map(|v| IntSet::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn trivial_bounds(a in small_set(), b in small_set()) {
                let (na, nb) = (a.len() as u128, b.len() as u128);
                for e in [additive_energy(&a, &b).unwrap(), multiplicative_energy(&a, &b).unwrap()] {
                    prop_assert!(e.value >= na * nb);
                    if e.kind == EnergyKind::Additive || !e.zero_in_input {
                        prop_assert!(e.value <= na * nb * na.min(nb));
                    }
                }
                let ea = additive_energy(&a, &a).unwrap().value;
                prop_assert!(na * na <= ea && ea <= na * na * na);
            }

            #[test]
            fn sum_and_difference_squares_agree(a in small_set()) {
                use crate::setcore::{rep_function, PairOp};
                let s = rep_function(&a, &a, PairOp::Sum).unwrap().sum_of_squares();
                let d = rep_function(&a, &a, PairOp::Difference).unwrap().sum_of_squares();
                prop_assert_eq!(s, d);
                prop_assert_eq!(s, additive_energy(&a, &a).unwrap().value);
            }

            #[test]
            fn dilation_invariance(a in small_set(), s in small_set(), d in -30i64..30) {
                prop_assume!(d != 0);
                let da = crate::setcore::dilate(&a, d).unwrap();
                prop_assert_eq!(
                    multiplicative_energy(&da, &s).unwrap().value,
                    multiplicative_energy(&a, &s).unwrap().value
                );
            }
        }
    }
}
