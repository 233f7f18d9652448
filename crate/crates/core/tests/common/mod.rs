//! Brute-force oracles, seeded instance generators and property checks
//! shared by the integration suites. The oracles enumerate tuples directly
//! and share no code with the library kernels.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use energy_lab::energy::Weight;
use energy_lab::setcore::IntSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A set of `1..=max_len` distinct integers from `[lo, hi]`.
pub fn random_set(rng: &mut ChaCha8Rng, max_len: usize, lo: i64, hi: i64) -> IntSet {
    let len = rng.gen_range(1..=max_len);
    let mut v = BTreeSet::new();
    while v.len() < len.min((hi - lo + 1) as usize) {
        v.insert(rng.gen_range(lo..=hi));
    }
    IntSet::new(v).unwrap()
}

/// Integer-valued weights, so that every sum of products is exact in `f64`.
pub fn random_int_weight(rng: &mut ChaCha8Rng, max_support: usize, lo: i64, hi: i64) -> Weight {
    let len = rng.gen_range(1..=max_support);
    let mut m = BTreeMap::new();
    while m.len() < len {
        let x = rng.gen_range(lo..=hi);
        if x != 0 {
            m.insert(x, rng.gen_range(1..=4) as f64);
        }
    }
    Weight::new(m).unwrap()
}

/// Real weights supported in `[1, 30]` with values in `(0, 1]`.
pub fn random_real_weight(rng: &mut ChaCha8Rng, max_support: usize) -> Weight {
    let len = rng.gen_range(1..=max_support);
    let mut m = BTreeMap::new();
    while m.len() < len {
        m.insert(rng.gen_range(1..=30i64), 1.0 - rng.gen::<f64>());
    }
    Weight::new(m).unwrap()
}

#[derive(Clone, Copy)]
pub enum Op {
    Add,
    Mul,
}

fn apply(op: Op, x: i128, y: i128) -> i128 {
    match op {
        Op::Add => x + y,
        Op::Mul => x * y,
    }
}

/// `|{(a₁, a₂, b₁, b₂) : a₁∘b₁ = a₂∘b₂}|` by enumerating quadruples.
pub fn pair_energy(a: &IntSet, b: &IntSet, op: Op) -> u128 {
    let mut n = 0;
    for a1 in a.iter() {
        for a2 in a.iter() {
            for b1 in b.iter() {
                for b2 in b.iter() {
                    if apply(op, a1 as i128, b1 as i128) == apply(op, a2 as i128, b2 as i128) {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

fn k_fold(a: &IntSet, k: u32, op: Op) -> Vec<i128> {
    let identity = match op {
        Op::Add => 0,
        Op::Mul => 1,
    };
    let mut acc = vec![identity];
    for _ in 0..k {
        acc = acc
            .iter()
            .flat_map(|&s| a.iter().map(move |x| apply(op, s, x as i128)))
            .collect();
    }
    acc
}

/// `T_k(A)` by comparing every pair of `k`-tuples.
pub fn t_energy(a: &IntSet, k: u32, op: Op) -> u128 {
    let tuples = k_fold(a, k, op);
    let mut n = 0;
    for &x in &tuples {
        for &y in &tuples {
            if x == y {
                n += 1;
            }
        }
    }
    n
}

/// `Σ f₁(a) f₂(b) f₃(c) f₄(d)` over `c − a = d − b`.
pub fn weighted_energy(f: [&Weight; 4]) -> f64 {
    let mut total = 0.0;
    for (a, wa) in f[0].iter() {
        for (b, wb) in f[1].iter() {
            for (c, wc) in f[2].iter() {
                for (d, wd) in f[3].iter() {
                    if c as i128 - a as i128 == d as i128 - b as i128 {
                        total += wa * wb * wc * wd;
                    }
                }
            }
        }
    }
    total
}

/// `|{(v, b, c) : v + b = c}|`.
pub fn incidences(f: &IntSet, b: &IntSet, c: &IntSet) -> u64 {
    let mut n = 0;
    for v in f.iter() {
        for y in b.iter() {
            for z in c.iter() {
                if v as i128 + y as i128 == z as i128 {
                    n += 1;
                }
            }
        }
    }
    n
}

pub fn sumset_size(a: &IntSet, b: &IntSet) -> usize {
    let s: BTreeSet<i128> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| x as i128 + y as i128))
        .collect();
    s.len()
}

/// `|nA − mA|` by iterated pairwise sums.
pub fn signed_sumset_size(a: &IntSet, n: usize, m: usize) -> usize {
    let mut s: BTreeSet<i128> = BTreeSet::from([0]);
    for i in 0..n + m {
        let sign = if i < n { 1 } else { -1 };
        s = s
            .iter()
            .flat_map(|&t| a.iter().map(move |x| t + sign * x as i128))
            .collect();
    }
    s.len()
}

/// `E⁺(f₁,f₂,f₃,f₄)⁴ ≤ Π E⁺(fᵢ)`, compared as exact integers; needs
/// integer-valued weights.
pub fn holder_holds(f: [&Weight; 4]) -> bool {
    use energy_lab::energy::weighted_energy as e;
    let exact = |x: f64| {
        assert!(x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(53), "{x}");
        x as u128
    };
    let lhs = exact(e(f[0], f[1], f[2], f[3]).unwrap());
    let rhs: u128 = f
        .iter()
        .map(|g| exact(e(*g, *g, *g, *g).unwrap()))
        .product();
    lhs.pow(4) <= rhs
}

/// Both Plünnecke–Ruzsa forms for every `n + m ≤ 4`, in the integer form
/// `|nA − mA|·|A|^{n+m−1} ≤ |A+A|^{n+m}`.
pub fn plunnecke_holds(a: &IntSet) -> bool {
    use energy_lab::setcore::{signed_sumset, sumset};
    let limits = energy_lab::Limits::default();
    let size = a.len() as u128;
    let doubled = sumset(a, a).unwrap().len() as u128;
    (1..=4u32).all(|total| {
        (0..=total).all(|n| {
            let m = total - n;
            let s = signed_sumset(a, n as usize, m as usize, &limits)
                .unwrap()
                .len() as u128;
            s * size.pow(total - 1) <= doubled.pow(total)
        })
    })
}
