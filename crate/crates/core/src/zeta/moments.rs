use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{phase_key, turn_to_unit};
use crate::energy::Weight;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numtheory::PrimeTable;
use crate::rng::{draw, stream_key};

/// Largest prime count for which the squarefree products over `[z, 2z)`
/// are enumerated.
const SUBSET_PRIMES_MAX: usize = 20;

/// Phase seed of Monte Carlo sample `index`.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    stream_key(seed, index)
}

/// Sum with a fixed binary tree over the indices, independent of how the
/// values were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Monte Carlo estimate of `𝔼|expr|^{2l}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples`.
    pub std_error: f64,
    pub samples: u64,
    pub target: String,
}

/// The random quantities [`mc_moment`] can sample.
#[derive(Debug, Clone, PartialEq)]
pub enum SampledExpr {
    Constant(f64),
    TruncatedZeta {
        alpha: f64,
        n_max: u64,
    },
    RestrictedEuler {
        alpha: f64,
        z: u64,
    },
    Fourier(Weight),
    /// `𝔉w(X)·ζ_X(α)` with the series truncated at `n_max`.
    FourierTimesZeta {
        weight: Weight,
        alpha: f64,
        n_max: u64,
    },
}

impl SampledExpr {
    pub fn describe(&self) -> String {
        match self {
            SampledExpr::Constant(c) => format!("constant {c}"),
            SampledExpr::TruncatedZeta { alpha, n_max } => {
                format!("truncated zeta alpha={alpha} n_max={n_max}")
            }
            SampledExpr::RestrictedEuler { alpha, z } => {
                format!("restricted euler product alpha={alpha} z={z}")
            }
            SampledExpr::Fourier(w) => format!("fourier transform of weight with {} terms", w.len()),
            SampledExpr::FourierTimesZeta { weight, alpha, n_max } => format!(
                "fourier transform of weight with {} terms times truncated zeta alpha={alpha} n_max={n_max}",
                weight.len()
            ),
        }
    }
}

/// `Σ_{n ≤ n_max} X_n n^{-α}` evaluated from prime phases alone.
pub(crate) struct DirichletPlan {
    primes: Vec<u64>,
    /// Index into `primes` of the smallest prime factor of n; unused at n < 2.
    spf: Vec<u32>,
    coeffs: Vec<f64>,
}

impl DirichletPlan {
    pub(crate) fn new(alpha: f64, n_max: u64, table: &PrimeTable) -> Result<Self> {
        if n_max > table.limit() {
            return Err(Error::Bounds {
                value: n_max as i128,
                reason: format!("prime table only reaches {}", table.limit()),
            });
        }
        let n = n_max as usize;
        let primes = table.primes_between(2, n_max + 1).to_vec();
        let mut spf = vec![u32::MAX; n + 1];
        for (i, &p) in primes.iter().enumerate() {
            let p = p as usize;
            for m in (p..=n).step_by(p) {
                if spf[m] == u32::MAX {
                    spf[m] = i as u32;
                }
            }
        }
        let coeffs = (0..=n)
            .map(|k| if k == 0 { 0.0 } else { (k as f64).powf(-alpha) })
            .collect();
        Ok(DirichletPlan {
            primes,
            spf,
            coeffs,
        })
    }

    pub(crate) fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `prime_turns[i]` is the phase turn of `primes[i]`.
    pub(crate) fn evaluate(&self, prime_turns: &[u64]) -> Complex64 {
        let mut buf = vec![0u64; self.n_max() + 1];
        self.evaluate_into(prime_turns, &mut buf)
    }

    fn evaluate_into(&self, prime_turns: &[u64], buf: &mut Vec<u64>) -> Complex64 {
        let n = self.n_max();
        buf.resize(n + 1, 0);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=n {
            let t = if k == 1 {
                0
            } else {
                let i = self.spf[k] as usize;
                buf[k / self.primes[i] as usize].wrapping_add(prime_turns[i])
            };
            buf[k] = t;
            acc += self.coeffs[k] * turn_to_unit(t);
        }
        acc
    }
}

struct FourierPlan {
    terms: Vec<(f64, Vec<(u64, u64)>)>,
}

impl FourierPlan {
    fn new(w: &Weight) -> Result<Self> {
        w.require_positive_support()?;
        let terms = w.iter().map(|(n, v)| (v, factor_small(n as u64))).collect();
        Ok(FourierPlan { terms })
    }

    fn evaluate(&self, key: u64) -> Complex64 {
        self.terms
            .iter()
            .map(|(v, factors)| {
                let t = factors.iter().fold(0u64, |acc, &(p, e)| {
                    acc.wrapping_add(draw(key, p).wrapping_mul(e))
                });
                v * turn_to_unit(t)
            })
            .sum()
    }
}

fn factor_small(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

enum Prepared {
    Constant(f64),
    Zeta(DirichletPlan),
    Euler(Vec<(u64, f64)>),
    Fourier(FourierPlan),
    FourierZeta(FourierPlan, DirichletPlan),
}

impl Prepared {
    fn new(expr: &SampledExpr, table: &PrimeTable) -> Result<Self> {
        Ok(match expr {
            SampledExpr::Constant(c) => Prepared::Constant(*c),
            SampledExpr::TruncatedZeta { alpha, n_max } => {
                check_zeta(*alpha, *n_max)?;
                Prepared::Zeta(DirichletPlan::new(*alpha, *n_max, table)?)
            }
            SampledExpr::RestrictedEuler { alpha, z } => {
                if !(*alpha > 0.0) || *z == 0 {
                    return Err(Error::Domain(
                        "restricted euler product needs alpha > 0 and z >= 1".into(),
                    ));
                }
                check_table(table, 2 * z - 1)?;
                Prepared::Euler(
                    table
                        .primes_between(*z, 2 * z)
                        .iter()
                        .map(|&p| (p, (p as f64).powf(-alpha)))
                        .collect(),
                )
            }
            SampledExpr::Fourier(w) => Prepared::Fourier(FourierPlan::new(w)?),
            SampledExpr::FourierTimesZeta {
                weight,
                alpha,
                n_max,
            } => {
                check_zeta(*alpha, *n_max)?;
                Prepared::FourierZeta(
                    FourierPlan::new(weight)?,
                    DirichletPlan::new(*alpha, *n_max, table)?,
                )
            }
        })
    }

    fn sample(&self, seed: u64, buf: &mut Vec<u64>) -> Complex64 {
        let key = phase_key(seed);
        let zeta = |plan: &DirichletPlan, buf: &mut Vec<u64>| {
            let turns: Vec<u64> = plan.primes.iter().map(|&p| draw(key, p)).collect();
            plan.evaluate_into(&turns, buf)
        };
        match self {
            Prepared::Constant(c) => Complex64::new(*c, 0.0),
            Prepared::Zeta(plan) => zeta(plan, buf),
            Prepared::Euler(factors) => factors
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, &(p, c)| {
                    acc * (1.0 + c * turn_to_unit(draw(key, p)))
                }),
            Prepared::Fourier(plan) => plan.evaluate(key),
            Prepared::FourierZeta(f, plan) => f.evaluate(key) * zeta(plan, buf),
        }
    }
}

fn check_zeta(alpha: f64, n_max: u64) -> Result<()> {
    if !(alpha > 0.5) {
        return Err(Error::Divergence {
            two_alpha: 2.0 * alpha,
        });
    }
    if n_max == 0 {
        return Err(Error::Domain("n_max must be positive".into()));
    }
    Ok(())
}

fn check_table(table: &PrimeTable, needed: u64) -> Result<()> {
    if needed > table.limit() {
        return Err(Error::Bounds {
            value: needed as i128,
            reason: format!("prime table only reaches {}", table.limit()),
        });
    }
    Ok(())
}

/// Estimates `𝔼|expr|^{2l}` from `samples` independent phase assignments.
///
/// Sample `i` uses the phases of [`sample_seed`]`(seed, i)`, so it equals the
/// single-shot evaluators applied to `sample_phases(…, sample_seed(seed, i))`.
/// Values are reduced in index order by [`pairwise_sum`], which makes the
/// estimate independent of the thread count.
pub fn mc_moment(
    expr: &SampledExpr,
    l: u32,
    samples: u64,
    seed: u64,
    table: &PrimeTable,
) -> Result<MomentEstimate> {
    if l == 0 {
        return Err(Error::Domain("moment order l must be positive".into()));
    }
    if samples < 100 {
        return Err(Error::Domain(format!(
            "at least 100 samples needed, found {samples}"
        )));
    }
    let prepared = Prepared::new(expr, table)?;
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            prepared
                .sample(sample_seed(seed, i), buf)
                .norm_sqr()
                .powi(l as i32)
        })
        .collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Numerical {
            index: i as u64,
            value: values[i],
        });
    }
    let n = samples as f64;
    let mean = pairwise_sum(&values) / n;
    let dev: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let variance = pairwise_sum(&dev) / (n - 1.0);
    Ok(MomentEstimate {
        mean,
        std_error: (variance / n).sqrt(),
        samples,
        target: format!("E|{}|^{}", expr.describe(), 2 * l),
    })
}

/// Exact `𝔼|Z_X(α)|^{2l}` with the per-prime comparison data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactZMoment {
    pub value: f64,
    pub log2_value: f64,
    pub prime_count: usize,
    /// `Σ_{z ≤ p < 2z} p^{-2α}`.
    pub prime_sum: f64,
    /// `2l²·Σ p^{-2α}`, the base-2 logarithm of the comparison bound.
    pub bound_exponent: f64,
    /// `2^{bound_exponent}`; absent when `l ≤ z^α` fails.
    pub bound: Option<f64>,
    /// Whether `l ≤ z^α`.
    pub hypothesis_holds: bool,
    /// Whether `log₂ E_l(p) ≤ 2l²/p^{2α}` held at every prime.
    pub per_prime_ok: bool,
}

fn binomial(l: u32, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (l - i) as f64 / (i + 1) as f64)
}

/// `E_l(p) = 𝔼|1 + X_p p^{-α}|^{2l} = Σ_{n=0}^{l} C(l,n)² p^{-2αn}`.
fn per_prime_moment(p: u64, alpha: f64, l: u32) -> f64 {
    let x = (p as f64).powf(-2.0 * alpha);
    (0..=l)
        .rev()
        .map(|n| binomial(l, n).powi(2) * x.powi(n as i32))
        .sum()
}

/// `Π_{z ≤ p < 2z} E_l(p)`, which is exact because the phases are
/// independent.
pub fn exact_z_moment(z: u64, alpha: f64, l: u32, table: &PrimeTable) -> Result<ExactZMoment> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "alpha must be positive, found {alpha}"
        )));
    }
    if l == 0 || z == 0 {
        return Err(Error::Domain("z and l must be positive".into()));
    }
    check_table(table, 2 * z - 1)?;
    let primes = table.primes_between(z, 2 * z);
    let l2 = (l as f64).powi(2);
    let mut value = 1.0;
    let mut log2_value = 0.0;
    let mut prime_sum = 0.0;
    let mut per_prime_ok = true;
    for &p in primes {
        let e = per_prime_moment(p, alpha, l);
        let x = (p as f64).powf(-2.0 * alpha);
        value *= e;
        log2_value += e.log2();
        prime_sum += x;
        per_prime_ok &= e.log2() <= 2.0 * l2 * x;
    }
    let hypothesis_holds = l as f64 <= (z as f64).powf(alpha);
    let bound_exponent = 2.0 * l2 * prime_sum;
    Ok(ExactZMoment {
        value,
        log2_value,
        prime_count: primes.len(),
        prime_sum,
        bound_exponent,
        bound: hypothesis_holds.then(|| bound_exponent.exp2()),
        hypothesis_holds,
        per_prime_ok,
    })
}

/// Exact `𝔼|𝔉w(X)·Z_X(α)|² = Σ_N (Σ_{m·q = N} w(m) q^{-α})²`, with `q`
/// running over squarefree products of the primes in `[z, 2z)`.
pub fn exact_fourier_euler_moment(
    w: &Weight,
    alpha: f64,
    z: u64,
    table: &PrimeTable,
    limits: &Limits,
) -> Result<f64> {
    w.require_positive_support()?;
    if !(alpha > 0.0) || z == 0 {
        return Err(Error::Domain("needs alpha > 0 and z >= 1".into()));
    }
    check_table(table, 2 * z - 1)?;
    let primes = table.primes_between(z, 2 * z);
    if primes.len() > SUBSET_PRIMES_MAX {
        return Err(Error::Ceiling {
            what: "squarefree products over [z, 2z)",
            needed: 1u128 << primes.len(),
            limit: 1u128 << SUBSET_PRIMES_MAX,
            hint: "; use a smaller z",
        });
    }
    let mut qs: Vec<(u128, f64)> = vec![(1, 1.0)];
    for &p in primes {
        let c = (p as f64).powf(-alpha);
        let extra: Vec<(u128, f64)> = qs.iter().map(|&(q, v)| (q * p as u128, v * c)).collect();
        qs.extend(extra);
    }
    limits.check_support("weighted euler convolution", (qs.len() * w.len()) as u128)?;
    let mut coeffs: BTreeMap<u128, f64> = BTreeMap::new();
    for (m, wm) in w.iter() {
        for &(q, c) in &qs {
            let n = (m as u128)
                .checked_mul(q)
                .ok_or_else(|| Error::Overflow(format!("{m} times {q}")))?;
            *coeffs.entry(n).or_insert(0.0) += wm * c;
        }
    }
    Ok(coeffs.values().map(|c| c * c).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{partial_zeta, primes_in, sieve_primes};
    use crate::zeta::{restricted_euler, sample_phases, truncated_zeta};

    fn table() -> PrimeTable {
        sieve_primes(10_000).unwrap()
    }

    fn within(est: &MomentEstimate, exact: f64, k: f64) -> bool {
        (est.mean - exact).abs() <= k * est.std_error
    }

    #[test]
    fn constant_moment() {
        let t = table();
        for l in 1..4 {
            let e = mc_moment(&SampledExpr::Constant(1.0), l, 100, 0, &t).unwrap();
            assert_eq!((e.mean, e.std_error, e.samples), (1.0, 0.0, 100));
        }
        assert!(mc_moment(&SampledExpr::Constant(1.0), 1, 99, 0, &t).is_err());
        assert!(mc_moment(&SampledExpr::Constant(1.0), 0, 100, 0, &t).is_err());
    }

    #[test]
    fn non_finite_samples_are_reported() {
        let t = table();
        let e = mc_moment(&SampledExpr::Constant(f64::INFINITY), 1, 100, 0, &t);
        assert!(matches!(e, Err(Error::Numerical { index: 0, .. })));
    }

    #[test]
    fn samples_match_single_shot_evaluators() {
        let t = table();
        let expr = SampledExpr::RestrictedEuler { alpha: 0.5, z: 10 };
        let prepared = Prepared::new(&expr, &t).unwrap();
        let ps = primes_in(2, 200, &t).unwrap();
        for i in 0..5 {
            let s = sample_seed(77, i);
            let a = sample_phases(&ps, s, &t).unwrap();
            let direct = restricted_euler(&a, 0.5, 10, &t).unwrap();
            assert!((prepared.sample(s, &mut Vec::new()) - direct).norm() < 1e-12);
            let zeta = Prepared::new(
                &SampledExpr::TruncatedZeta {
                    alpha: 0.75,
                    n_max: 150,
                },
                &t,
            )
            .unwrap();
            let direct = truncated_zeta(&a, 0.75, 150, &t).unwrap();
            assert!((zeta.sample(s, &mut Vec::new()) - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn zeta_second_moment() {
        let t = table();
        let e = mc_moment(
            &SampledExpr::TruncatedZeta {
                alpha: 1.0,
                n_max: 2,
            },
            1,
            20_000,
            5,
            &t,
        )
        .unwrap();
        assert!(within(&e, 1.25, 5.0), "{e:?}");
        let e = mc_moment(
            &SampledExpr::TruncatedZeta {
                alpha: 0.75,
                n_max: 100,
            },
            1,
            20_000,
            6,
            &t,
        )
        .unwrap();
        assert!(
            within(&e, partial_zeta(0.75, 100).unwrap().value, 5.0),
            "{e:?}"
        );
    }

    #[test]
    fn euler_moment_small_case() {
        let t = table();
        let exact = exact_z_moment(3, 0.5, 1, &t).unwrap();
        assert!((exact.value - 1.6).abs() < 1e-15);
        let e = mc_moment(
            &SampledExpr::RestrictedEuler { alpha: 0.5, z: 3 },
            1,
            20_000,
            8,
            &t,
        )
        .unwrap();
        assert!(within(&e, 1.6, 5.0), "{e:?}");
    }

    #[test]
    fn exact_moment_properties() {
        let t = table();
        let empty = exact_z_moment(1, 0.5, 3, &t).unwrap();
        assert_eq!((empty.value, empty.prime_count), (1.0, 0));
        // l > z^α: still computed, comparison withheld.
        let e = exact_z_moment(4, 0.5, 3, &t).unwrap();
        assert!(!e.hypothesis_holds && e.bound.is_none());
        for z in [3u64, 10, 50, 200] {
            for l in 1..=4 {
                for alpha in [0.5, 0.75] {
                    let e = exact_z_moment(z, alpha, l, &t).unwrap();
                    assert!(e.per_prime_ok);
                    if e.hypothesis_holds {
                        assert!(e.log2_value <= e.bound_exponent);
                    }
                }
            }
        }
        // l = 2 at p: 1 + 4x + x².
        let x = 5f64.powf(-1.5);
        assert!((per_prime_moment(5, 0.75, 2) - (1.0 + 4.0 * x + x * x)).abs() < 1e-15);
    }

    #[test]
    fn exact_first_moment_is_plain_product() {
        // With l = 1 the exact moment is Π(1 + p^{-2α}).
        let t = table();
        let e = exact_z_moment(20, 0.75, 1, &t).unwrap();
        let direct: f64 = t
            .primes_between(20, 40)
            .iter()
            .map(|&p| 1.0 + (p as f64).powf(-1.5))
            .product();
        assert!((e.value - direct).abs() < 1e-14);
    }

    #[test]
    fn fourier_euler_moment_matches_sampling() {
        let t = table();
        let w = Weight::new([(1, 1.0), (2, 0.5), (6, 0.25), (7, 1.0)]).unwrap();
        let exact = exact_fourier_euler_moment(&w, 0.5, 5, &t, &Limits::default()).unwrap();
        let ps = primes_in(2, 20, &t).unwrap();
        let n = 20_000u64;
        let vals: Vec<f64> = (0..n)
            .map(|i| {
                let a = sample_phases(&ps, sample_seed(3, i), &t).unwrap();
                let f = crate::zeta::fourier_w(&a, &w).unwrap();
                (f * restricted_euler(&a, 0.5, 5, &t).unwrap()).norm_sqr()
            })
            .collect();
        let mean = vals.iter().sum::<f64>() / n as f64;
        let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
        assert!(
            (mean - exact).abs() <= 5.0 * sd / (n as f64).sqrt(),
            "{mean} vs {exact}"
        );
    }

    #[test]
    fn pairwise_sum_is_exact_on_integers() {
        let xs: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
