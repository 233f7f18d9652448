//! Random multiplicative phases and the random zeta machinery built on
//! them: the truncated Dirichlet series `ζ_X(α)`, the restricted Euler
//! product `Z_X(α) = Π_{z ≤ p < 2z}(1 + X_p p^{-α})`, the random Fourier
//! transform `𝔉w(X) = Σ w(n) X_n`, their moments and the GCD-sum identity.
//!
//! Phases are stored as fractions of a full turn in a `u64` (2⁶⁴ = one
//! turn). Extending `X_p` multiplicatively to `X_n` is then wrapping integer
//! addition, exact for any number of factors; the only rounding happens in
//! the final conversion to a complex number.

mod gcd;
mod moments;

use num_complex::Complex64;
use serde::Serialize;

use crate::energy::Weight;
use crate::error::{Error, Result};
use crate::numtheory::PrimeTable;
use crate::rng::{draw, stream_key};
use crate::setcore::IntSet;

pub use gcd::{gcd_sum, gcd_sum_lhs, GcdSum};
pub use moments::{
    exact_fourier_euler_moment, exact_z_moment, mc_moment, pairwise_sum, sample_seed, ExactZMoment,
    MomentEstimate, SampledExpr,
};

const PHASE_STREAM: u64 = 0x7068_6173_6573; // "phases"

/// Turn fraction of `X_p` under `seed`.
#[inline]
pub fn phase_turn(seed: u64, p: u64) -> u64 {
    draw(phase_key(seed), p)
}

#[inline]
pub(crate) fn phase_key(seed: u64) -> u64 {
    stream_key(seed, PHASE_STREAM)
}

/// `e^{2πi·t/2⁶⁴}`.
#[inline]
pub fn turn_to_unit(turn: u64) -> Complex64 {
    // Signed view keeps the angle in [-π, π) where sin/cos are most accurate.
    let theta = (turn as i64) as f64 * (std::f64::consts::TAU / 18_446_744_073_709_551_616.0);
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// A realization of the independent uniform phases `X_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseAssignment {
    seed: u64,
    primes: Vec<u64>,
    turns: Vec<u64>,
}

impl PhaseAssignment {
    pub fn seed(&self) -> u64 {
        self.seed
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

    /// All phases equal to 1, for degenerate checks.
    pub fn trivial(primes: &[u64]) -> Self {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        let turns = vec![0; primes.len()];
        PhaseAssignment {
            seed: 0,
            primes,
            turns,
        }
    }

    /// Phases for every prime of the table in `[lo, hi)`.
    pub fn for_range(table: &PrimeTable, lo: u64, hi: u64, seed: u64) -> Self {
        let primes = table.primes_between(lo, hi).to_vec();
        let turns = primes.iter().map(|&p| phase_turn(seed, p)).collect();
        PhaseAssignment {
            seed,
            primes,
            turns,
        }
    }

    pub fn turn(&self, p: u64) -> Option<u64> {
        self.primes.binary_search(&p).ok().map(|i| self.turns[i])
    }

    pub fn phase(&self, p: u64) -> Option<Complex64> {
        self.turn(p).map(turn_to_unit)
    }

    /// Turn fraction of `X_n = Π X_{p_j}^{ω_j}`.
    pub fn extend_turn(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Domain("X_n is defined for n >= 1".into()));
        }
        let mut rest = n;
        let mut acc = 0u64;
        for (&p, &t) in self.primes.iter().zip(&self.turns) {
            if p.saturating_mul(p) > rest {
                break;
            }
            while rest % p == 0 {
                rest /= p;
                acc = acc.wrapping_add(t);
            }
        }
        if rest > 1 {
            // rest is a prime if every factor was covered.
            let t = self
                .turn(rest)
                .ok_or_else(|| Error::Coverage(smallest_factor(rest)))?;
            acc = acc.wrapping_add(t);
        }
        Ok(acc)
    }

    /// Ensures every prime of the table in `[lo, hi)` carries a phase.
    pub fn require_coverage(&self, table: &PrimeTable, lo: u64, hi: u64) -> Result<()> {
        if hi > table.limit() + 1 {
            return Err(Error::Bounds {
                value: hi as i128,
                reason: format!("prime table only reaches {}", table.limit()),
            });
        }
        for &p in table.primes_between(lo, hi) {
            if self.turn(p).is_none() {
                return Err(Error::Coverage(p));
            }
        }
        Ok(())
    }
}

fn smallest_factor(n: u64) -> u64 {
    (2..)
        .take_while(|d| d * d <= n)
        .find(|d| n % d == 0)
        .unwrap_or(n)
}

/// Independent uniform phases for the given primes, a pure function of
/// `(seed, p)` for each prime.
pub fn sample_phases(primes: &IntSet, seed: u64, table: &PrimeTable) -> Result<PhaseAssignment> {
    let mut ps = Vec::with_capacity(primes.len());
    for x in primes.iter() {
        let ok = x >= 2 && (x as u64) <= table.limit() && table.contains(x as u64);
        if !ok {
            return Err(Error::Domain(format!(
                "{x} is not a prime of the table (limit {})",
                table.limit()
            )));
        }
        ps.push(x as u64);
    }
    let turns = ps.iter().map(|&p| phase_turn(seed, p)).collect();
    Ok(PhaseAssignment {
        seed,
        primes: ps,
        turns,
    })
}

/// `X_n`; `X_1 = 1`.
pub fn extend_phase(assignment: &PhaseAssignment, n: u64) -> Result<Complex64> {
    assignment.extend_turn(n).map(turn_to_unit)
}

/// `Σ_{n ≤ n_max} X_n n^{-α}`.
pub fn truncated_zeta(
    assignment: &PhaseAssignment,
    alpha: f64,
    n_max: u64,
    table: &PrimeTable,
) -> Result<Complex64> {
    if !(alpha > 0.5) {
        return Err(Error::Divergence {
            two_alpha: 2.0 * alpha,
        });
    }
    if n_max == 0 {
        return Err(Error::Domain("n_max must be positive".into()));
    }
    assignment.require_coverage(table, 2, n_max + 1)?;
    let plan = moments::DirichletPlan::new(alpha, n_max, table)?;
    let turns: Vec<u64> = plan
        .primes()
        .iter()
        .map(|&p| assignment.turn(p).expect("coverage checked"))
        .collect();
    Ok(plan.evaluate(&turns))
}

/// `Π_{z ≤ p < 2z} (1 + X_p p^{-α})`.
pub fn restricted_euler(
    assignment: &PhaseAssignment,
    alpha: f64,
    z: u64,
    table: &PrimeTable,
) -> Result<Complex64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!(
            "alpha must be positive, found {alpha}"
        )));
    }
    if z == 0 {
        return Err(Error::Domain("z must be positive".into()));
    }
    assignment.require_coverage(table, z, 2 * z)?;
    Ok(table
        .primes_between(z, 2 * z)
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, &p| {
            let x = assignment.phase(p).expect("coverage checked");
            acc * (1.0 + x * (p as f64).powf(-alpha))
        }))
}

/// `𝔉w(X) = Σ w(n) X_n`.
pub fn fourier_w(assignment: &PhaseAssignment, w: &Weight) -> Result<Complex64> {
    w.require_positive_support()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, v) in w.iter() {
        acc += v * extend_phase(assignment, n as u64)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{partial_zeta, primes_in, sieve_primes};

    fn table() -> PrimeTable {
        sieve_primes(10_000).unwrap()
    }

    #[test]
    fn sampling_is_deterministic() {
        let t = table();
        let ps = primes_in(2, 100, &t).unwrap();
        let a = sample_phases(&ps, 9, &t).unwrap();
        let b = sample_phases(&ps, 9, &t).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_phases(&ps, 10, &t).unwrap());
        assert!(sample_phases(&IntSet::empty(), 9, &t).unwrap().is_empty());
        assert!(sample_phases(&IntSet::new([4]).unwrap(), 9, &t).is_err());
        // Same prime, same phase, regardless of which other primes are sampled.
        let small = sample_phases(&IntSet::new([7]).unwrap(), 9, &t).unwrap();
        assert_eq!(small.turn(7), a.turn(7));
    }

    #[test]
    fn uniform_phase_mean_is_small() {
        let n = 10_000u64;
        let mean = (0..n)
            .map(|s| turn_to_unit(phase_turn(s, 2)))
            .sum::<Complex64>()
            / n as f64;
        assert!(mean.norm() <= 5.0 / (n as f64).sqrt(), "{}", mean.norm());
    }

    #[test]
    fn extension() {
        let t = table();
        let a = sample_phases(&primes_in(2, 50, &t).unwrap(), 3, &t).unwrap();
        assert_eq!(extend_phase(&a, 1).unwrap(), Complex64::new(1.0, 0.0));
        let x2 = a.phase(2).unwrap();
        let x3 = a.phase(3).unwrap();
        let x12 = extend_phase(&a, 12).unwrap();
        assert!((x12 - x2 * x2 * x3).norm() < 1e-12);
        for n in 1..=100u64 {
            if let Ok(x) = extend_phase(&a, n * 47) {
                assert!((x.norm() - 1.0).abs() < 1e-12);
            }
        }
        assert!(matches!(extend_phase(&a, 53), Err(Error::Coverage(53))));
        assert!(matches!(
            extend_phase(&a, 53 * 59),
            Err(Error::Coverage(53))
        ));
        assert!(extend_phase(&a, 0).is_err());
    }

    #[test]
    fn long_products_keep_unit_modulus() {
        let t = table();
        let a = sample_phases(&primes_in(2, 3, &t).unwrap(), 5, &t).unwrap();
        let x = extend_phase(&a, 1 << 62).unwrap();
        assert!((x.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_basics() {
        let t = table();
        let a = PhaseAssignment::for_range(&t, 2, 1001, 1);
        assert_eq!(
            truncated_zeta(&a, 0.75, 1, &t).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let ones = PhaseAssignment::trivial(t.primes_between(2, 1001));
        let v = truncated_zeta(&ones, 1.5, 1000, &t).unwrap();
        let pz = partial_zeta(0.75, 1000).unwrap().value;
        assert!((v.re - pz).abs() < 1e-10 && v.im.abs() < 1e-12);
        assert!(matches!(
            truncated_zeta(&a, 0.5, 10, &t),
            Err(Error::Divergence { .. })
        ));
        assert!(matches!(
            truncated_zeta(&a, 0.75, 2000, &t),
            Err(Error::Coverage(1009))
        ));
    }

    #[test]
    fn euler_product_examples() {
        let t = table();
        let a = PhaseAssignment::for_range(&t, 2, 200, 11);
        // No primes in [1, 2).
        assert_eq!(
            restricted_euler(&a, 0.5, 1, &t).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let ones = PhaseAssignment::trivial(&[3, 5]);
        let v = restricted_euler(&ones, 0.5, 3, &t).unwrap();
        assert!((v.re - 2.282_762_754_436_744_6).abs() < 1e-12);
        for z in [3u64, 10, 30, 50] {
            let cap: f64 = t
                .primes_between(z, 2 * z)
                .iter()
                .map(|&p| 1.0 + (p as f64).powf(-0.5))
                .product();
            assert!(restricted_euler(&a, 0.5, z, &t).unwrap().norm() <= cap + 1e-12);
        }
        let partial = PhaseAssignment::trivial(&[3]);
        assert!(matches!(
            restricted_euler(&partial, 0.5, 3, &t),
            Err(Error::Coverage(5))
        ));
    }

    #[test]
    fn fourier_basics() {
        let t = table();
        let a = PhaseAssignment::for_range(&t, 2, 100, 2);
        let one = Weight::new([(1, 1.0)]).unwrap();
        assert_eq!(fourier_w(&a, &one).unwrap(), Complex64::new(1.0, 0.0));
        let neg = Weight::new([(-2, 1.0)]).unwrap();
        assert!(matches!(fourier_w(&a, &neg), Err(Error::Domain(_))));
    }
}
