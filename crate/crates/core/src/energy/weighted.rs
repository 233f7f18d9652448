use std::collections::BTreeMap;

use super::{EnergyOp, FiniteFunction};
use crate::error::{Error, Result};

fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!("{what} is not finite")))
    }
}

/// `z ↦ Σ_x f(x)·g(x + z)`.
fn shifted_correlation(f: &[(i64, f64)], g: &[(i64, f64)]) -> BTreeMap<i128, f64> {
    let mut out = BTreeMap::new();
    for &(x, fx) in f {
        for &(u, gu) in g {
            *out.entry(u as i128 - x as i128).or_insert(0.0) += fx * gu;
        }
    }
    out
}

/// `E⁺(f₁, f₂, f₃, f₄) = Σ_{x,y,z} f₁(x) f₂(y) f₃(x+z) f₄(y+z)`.
pub fn weighted_energy<F1, F2, F3, F4>(f1: &F1, f2: &F2, f3: &F3, f4: &F4) -> Result<f64>
where
    F1: FiniteFunction + ?Sized,
    F2: FiniteFunction + ?Sized,
    F3: FiniteFunction + ?Sized,
    F4: FiniteFunction + ?Sized,
{
    let left = shifted_correlation(&f1.entries(), &f3.entries());
    let right = shifted_correlation(&f2.entries(), &f4.entries());
    let total = left
        .iter()
        .filter_map(|(z, l)| right.get(z).map(|r| l * r))
        .sum::<f64>();
    finite(total, "weighted energy")
}

fn combine(op: EnergyOp, x: i128, y: i128) -> Result<i128> {
    match op {
        EnergyOp::Sum => x.checked_add(y),
        EnergyOp::Product => x.checked_mul(y),
    }
    .ok_or_else(|| Error::Overflow(format!("{x} combined with {y}")))
}

/// `Σ_x (Σ_{a∘b = x} f(a) g(b))²`; with indicators this is `E(A, B)`.
pub fn weighted_pair_energy<F, G>(f: &F, g: &G, op: EnergyOp) -> Result<f64>
where
    F: FiniteFunction + ?Sized,
    G: FiniteFunction + ?Sized,
{
    let mut conv: BTreeMap<i128, f64> = BTreeMap::new();
    let ge = g.entries();
    for (a, fa) in f.entries() {
        for &(b, gb) in &ge {
            *conv
                .entry(combine(op, a as i128, b as i128)?)
                .or_insert(0.0) += fa * gb;
        }
    }
    finite(conv.values().map(|v| v * v).sum(), "weighted pair energy")
}

/// `T_k(f) = Σ_x (Σ_{n₁∘…∘n_k = x} f(n₁)…f(n_k))²`.
pub fn weighted_t_energy<F>(f: &F, k: u32, op: EnergyOp) -> Result<f64>
where
    F: FiniteFunction + ?Sized,
{
    if k == 0 {
        return Err(Error::Domain("higher energy needs k >= 1".into()));
    }
    let base = f.entries();
    let mut cur: BTreeMap<i128, f64> = base.iter().map(|&(n, w)| (n as i128, w)).collect();
    for _ in 1..k {
        let mut next = BTreeMap::new();
        for (&x, &cx) in &cur {
            for &(n, w) in &base {
                *next.entry(combine(op, x, n as i128)?).or_insert(0.0) += cx * w;
            }
        }
        cur = next;
    }
    finite(cur.values().map(|v| v * v).sum(), "weighted higher energy")
}
