use rayon::prelude::*;
use serde::Serialize;

use super::moments::pairwise_sum;
use crate::energy::Weight;
use crate::error::{Error, Result};
use crate::numtheory::{gcd_u64, partial_zeta};

/// `ζ(2α)·Σ w(m₁)w(m₂) gcd(m₁,m₂)^{2α} / (m₁m₂)^α`, with `ζ(2α)` replaced by
/// a partial sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GcdSum {
    pub value: f64,
    /// The exact sum lies in `value ± interval_width`.
    pub interval_width: f64,
    pub double_sum: f64,
    pub zeta_partial: f64,
    pub zeta_tail_bound: f64,
    /// Floating-point allowance included in `interval_width`.
    pub rounding_slack: f64,
}

impl GcdSum {
    pub fn lower(&self) -> f64 {
        self.value - self.interval_width
    }

    pub fn upper(&self) -> f64 {
        self.value + self.interval_width
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }
}

fn check(w: &Weight, alpha: f64) -> Result<()> {
    if !(2.0 * alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::Divergence {
            two_alpha: 2.0 * alpha,
        });
    }
    w.require_positive_support()
}

fn support_pairs(w: &Weight) -> Vec<(u64, u64, f64)> {
    let entries: Vec<(i64, f64)> = w.iter().collect();
    entries
        .iter()
        .flat_map(|&(m1, w1)| {
            entries
                .iter()
                .map(move |&(m2, w2)| (m1 as u64, m2 as u64, w1 * w2))
        })
        .collect()
}

/// Evaluates the gcd form of `𝔼|𝔉w(X)·ζ_X(α)|²`.
///
/// `interval_width` is the partial-zeta tail bound times the double sum plus
/// a floating-point allowance of `4ε·(zeta_trunc + |supp w|² + 16)` relative
/// to the value, which also covers the rounding of [`gcd_sum_lhs`] at
/// `t_max = zeta_trunc`.
pub fn gcd_sum(w: &Weight, alpha: f64, zeta_trunc: u64) -> Result<GcdSum> {
    check(w, alpha)?;
    let zeta = partial_zeta(alpha, zeta_trunc)?;
    let pairs = support_pairs(w);
    let terms: Vec<f64> = pairs
        .iter()
        .map(|&(m1, m2, ww)| {
            let g = gcd_u64(m1, m2) as f64;
            ww * g.powf(2.0 * alpha) / (m1 as f64 * m2 as f64).powf(alpha)
        })
        .collect();
    let double_sum = pairwise_sum(&terms);
    let value = zeta.value * double_sum;
    let rounding_slack =
        4.0 * f64::EPSILON * (zeta_trunc as f64 + pairs.len() as f64 + 16.0) * value.abs();
    Ok(GcdSum {
        value,
        interval_width: zeta.tail_bound * double_sum.abs() + rounding_slack,
        double_sum,
        zeta_partial: zeta.value,
        zeta_tail_bound: zeta.tail_bound,
        rounding_slack,
    })
}

/// Direct enumeration of `Σ_{n₁m₁ = n₂m₂} w(m₁)w(m₂)/(n₁n₂)^α`.
///
/// For a support pair with `g = gcd(m₁, m₂)`, `u_i = m_i/g`, the solutions
/// are `(n₁, n₂) = (t·u₂, t·u₁)`; those with `t ≤ t_max` are summed.
pub fn gcd_sum_lhs(w: &Weight, alpha: f64, t_max: u64) -> Result<f64> {
    check(w, alpha)?;
    if t_max == 0 {
        return Err(Error::Domain("t_max must be positive".into()));
    }
    let per_pair: Vec<f64> = support_pairs(w)
        .par_iter()
        .map(|&(m1, m2, ww)| {
            let g = gcd_u64(m1, m2);
            let (u1, u2) = ((m1 / g) as u128, (m2 / g) as u128);
            let inner: f64 = (1..=t_max as u128)
                .rev()
                .map(|t| ((t * u2) as f64 * (t * u1) as f64).powf(-alpha))
                .sum();
            ww * inner
        })
        .collect();
    Ok(pairwise_sum(&per_pair))
}
