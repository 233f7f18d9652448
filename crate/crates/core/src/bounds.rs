//! Closed-form right-hand sides of the energy and growth bounds.
//!
//! All logarithms are base 2 and `exp` is the natural exponential. Every
//! absolute constant the asymptotic statements leave unspecified is an
//! explicit argument; callers that have no better value pass 1. The
//! evaluators only compute; comparing against a measured value happens in
//! [`BoundReport`], which records the ratio and which preconditions held.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// A measured quantity next to a bound evaluated at explicit constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub measured: f64,
    pub bound_rhs: f64,
    /// `measured / bound_rhs`; absent unless `bound_rhs > 0`.
    pub ratio: Option<f64>,
    pub constants: BTreeMap<String, f64>,
    pub hypothesis_flags: BTreeMap<String, bool>,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, measured: f64, bound_rhs: f64) -> Self {
        let ratio = (bound_rhs > 0.0 && bound_rhs.is_finite()).then(|| measured / bound_rhs);
        BoundReport {
            name: name.into(),
            measured,
            bound_rhs,
            ratio,
            constants: BTreeMap::new(),
            hypothesis_flags: BTreeMap::new(),
        }
    }

    pub fn constant(mut self, name: &str, value: f64) -> Self {
        self.constants.insert(name.to_string(), value);
        self
    }

    pub fn flag(mut self, name: &str, holds: bool) -> Self {
        self.hypothesis_flags.insert(name.to_string(), holds);
        self
    }

    pub fn flags(mut self, flags: &BTreeMap<String, bool>) -> Self {
        self.hypothesis_flags
            .extend(flags.iter().map(|(k, v)| (k.clone(), *v)));
        self
    }
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive and finite, found {x}"
        )))
    }
}

fn at_least(name: &str, x: f64, min: f64) -> Result<f64> {
    if x >= min && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!(
            "{name} must be at least {min}, found {x}"
        )))
    }
}

/// `‖w‖₁`, `‖w‖₂` and `T_{s+1}(w)` of a weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightNorms {
    pub l1: f64,
    pub l2: f64,
    pub t_next: f64,
}

impl WeightNorms {
    /// `log₂(T_{s+1}·‖w‖₂^{-2(s+1)})`, which is nonnegative for genuine
    /// norms. The flag is false when the data make it negative; the value
    /// is then clamped to 0.
    fn energy_log(&self, s: u32) -> Result<(f64, bool)> {
        positive("||w||_2", self.l2)?;
        positive("T_{s+1}", self.t_next)?;
        let v = self.t_next.log2() - 2.0 * (s as f64 + 1.0) * self.l2.log2();
        // Rounding of the two logarithms alone.
        let ok = v >= -1e-9 * (1.0 + v.abs());
        Ok((v.max(0.0), ok))
    }
}

/// Both forms of the bound for `Σ_{n ≤ N}`-type energies of a general
/// weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadziwillRhs {
    /// `N‖w‖₂²·exp(C√(s⁻¹·log log N·log(T_{s+1}‖w‖₂^{-2(s+1)})) + 2 log log N)`.
    pub energy_form: f64,
    /// `N‖w‖₂²·exp(C√(log log N·log(‖w‖₁/‖w‖₂)) + 2 log log N)`.
    pub l1_form: f64,
    pub hypothesis_flags: BTreeMap<String, bool>,
}

/// The `N`-range bound at constant `C`; increasing in `N`, `T_{s+1}`, `‖w‖₁`
/// and `C ≥ 0`.
pub fn radziwill_rhs(n: f64, norms: WeightNorms, s: u32, c: f64) -> Result<RadziwillRhs> {
    at_least("N", n, 3.0)?;
    if s == 0 {
        return Err(Error::Domain("s must be positive".into()));
    }
    positive("||w||_1", norms.l1)?;
    let (log_t, t_ok) = norms.energy_log(s)?;
    let llog = n.log2().log2();
    let base = n * norms.l2 * norms.l2;
    let energy_form = base * ((c * (llog * log_t / s as f64).sqrt()) + 2.0 * llog).exp();
    let log_ratio = (norms.l1 / norms.l2).log2();
    let l1_ok = log_ratio >= -1e-12;
    let l1_form = base * ((c * (llog * log_ratio.max(0.0)).sqrt()) + 2.0 * llog).exp();
    let mut flags = BTreeMap::new();
    flags.insert("energy_log_nonnegative".into(), t_ok);
    flags.insert("l1_at_least_l2".into(), l1_ok);
    Ok(RadziwillRhs {
        energy_form,
        l1_form,
        hypothesis_flags: flags,
    })
}

/// The bound for `E×(𝒫_z, w)` together with the size condition on
/// `log(T_{s+1}‖w‖₂^{-2(s+1)})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PzRhs {
    pub value: f64,
    pub hypothesis_flags: BTreeMap<String, bool>,
}

fn pz_common(z: f64, norms: WeightNorms, s: u32) -> Result<(f64, BTreeMap<String, bool>)> {
    at_least("z", z, 3.0)?;
    if s == 0 {
        return Err(Error::Domain("s must be positive".into()));
    }
    let (log_t, t_ok) = norms.energy_log(s)?;
    let mut flags = BTreeMap::new();
    flags.insert("energy_log_nonnegative".into(), t_ok);
    flags.insert(
        "log_t_at_most_sz_over_log_z".into(),
        log_t <= s as f64 * z / z.log2(),
    );
    Ok((log_t, flags))
}

/// `z^{2α}‖w‖₂²·exp(C·z^{1/2−α}·√(s⁻¹·log⁻¹z·log(T_{s+1}‖w‖₂^{-2(s+1)})))`;
/// increasing in `T_{s+1}` and `C ≥ 0`.
pub fn pz_rhs(z: f64, norms: WeightNorms, s: u32, alpha: f64, c: f64) -> Result<PzRhs> {
    let (log_t, flags) = pz_common(z, norms, s)?;
    let root = (log_t / (s as f64 * z.log2())).sqrt();
    let value = z.powf(2.0 * alpha) * norms.l2 * norms.l2 * (c * z.powf(0.5 - alpha) * root).exp();
    Ok(PzRhs {
        value,
        hypothesis_flags: flags,
    })
}

/// `(εz)²‖w‖₂²·exp(C·ε⁻¹z^{-1/2}·√(s⁻¹·log⁻¹z·log(T_{s+1}‖w‖₂^{-2(s+1)})))`.
pub fn pz_rhs_eps(z: f64, norms: WeightNorms, s: u32, eps: f64, c: f64) -> Result<PzRhs> {
    positive("eps", eps)?;
    let (log_t, flags) = pz_common(z, norms, s)?;
    let root = (log_t / (s as f64 * z.log2())).sqrt();
    let value = (eps * z).powi(2) * norms.l2 * norms.l2 * (c / (eps * z.sqrt()) * root).exp();
    Ok(PzRhs {
        value,
        hypothesis_flags: flags,
    })
}

/// Size condition and energy threshold for the prime repulsion statement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApInGCheck {
    /// `log₂|S|`.
    pub lhs: f64,
    /// `K·ε·l / log₂ l`.
    pub rhs: f64,
    pub condition_holds: bool,
    /// `ε·|𝒫^(l)|²·|S|`.
    pub threshold: f64,
}

/// `log₂|S| ≤ K·ε·l/log₂ l` with the implied constant `K` exposed; the
/// threshold is linear in `|S|`.
pub fn ap_in_g_check(
    l: u64,
    s_size: u64,
    eps: f64,
    primes_up_to_l: u64,
    k: f64,
) -> Result<ApInGCheck> {
    if l < 3 {
        return Err(Error::Domain(format!("l must be at least 3, found {l}")));
    }
    at_least("eps", eps, 0.0)?;
    if s_size == 0 {
        return Err(Error::Domain("S must be nonempty".into()));
    }
    let lhs = (s_size as f64).log2();
    let rhs = k * eps * l as f64 / (l as f64).log2();
    Ok(ApInGCheck {
        lhs,
        rhs,
        condition_holds: lhs <= rhs,
        threshold: eps * (primes_up_to_l as f64).powi(2) * s_size as f64,
    })
}

/// `2^{l+1} − c·log₂ l`.
pub fn tl_exponent(l: u32, c: f64) -> Result<f64> {
    if l == 0 {
        return Err(Error::Domain("l must be positive".into()));
    }
    Ok(2f64.powi(l as i32 + 1) - c * (l as f64).log2())
}

/// `|I|^{2^{l+1} − c·log₂ l}`; increasing in `|I|` and decreasing in `c`.
pub fn tl_rhs(i_size: u64, l: u32, c: f64) -> Result<f64> {
    if i_size < 2 {
        return Err(Error::Domain(format!(
            "|I| must be at least 2, found {i_size}"
        )));
    }
    Ok((i_size as f64).powf(tl_exponent(l, c)?))
}

fn log_size(a_size: u64) -> Result<f64> {
    if a_size < 2 {
        return Err(Error::Domain(format!(
            "|A| must be at least 2, found {a_size}"
        )));
    }
    Ok((a_size as f64).log2())
}

/// Growth factor `exp(C·log^{1−3α}|A|)` that `|(A−a)S|/|S|` is compared to.
pub fn t_as_rhs(a_size: u64, alpha: f64, c: f64) -> Result<f64> {
    Ok((c * log_size(a_size)?.powf(1.0 - 3.0 * alpha)).exp())
}

/// Fraction `exp(−C·log^{1−6α}|A|)` of shifts for which growth is asserted.
pub fn t_as_witness_fraction(a_size: u64, alpha: f64, c: f64) -> Result<f64> {
    Ok((-c * log_size(a_size)?.powf(1.0 - 6.0 * alpha)).exp())
}

/// Preconditions of the shifted product growth statement.
pub fn as_hypotheses(
    a_size: u64,
    doubling: f64,
    s_size: u64,
    s_doubling: Option<f64>,
    alpha: f64,
    k: f64,
) -> Result<BTreeMap<String, bool>> {
    let la = log_size(a_size)?;
    let cap = (la.powf(2.0 - 6.0 * alpha) / la.log2()).exp();
    let mut flags = BTreeMap::new();
    flags.insert("alpha_in_range".into(), (0.0..1.0 / 6.0).contains(&alpha));
    flags.insert(
        "doubling_condition".into(),
        doubling <= k * la.powf(alpha).exp(),
    );
    flags.insert("s_size_condition".into(), (s_size as f64) <= cap);
    if let Some(ks) = s_doubling {
        let ls = (s_size.max(1) as f64).log2();
        flags.insert("s_doubling_condition".into(), ks * ls <= cap);
    }
    Ok(flags)
}

/// `√(|B||C|)·|I|·|B|^{−δ}`.
pub fn inc_rhs(i_size: u64, b_size: u64, c_size: u64, delta: f64) -> Result<f64> {
    if i_size == 0 || b_size == 0 || c_size == 0 {
        return Err(Error::Domain("sizes must be positive".into()));
    }
    let b = b_size as f64;
    Ok((b * c_size as f64).sqrt() * i_size as f64 * b.powf(-delta))
}

/// `|I|²·|B|^{1−δ}`, compared with `E⁺(f(I), B)`.
pub fn e_f_rhs(i_size: u64, b_size: u64, delta: f64) -> Result<f64> {
    if i_size == 0 || b_size == 0 {
        return Err(Error::Domain("sizes must be positive".into()));
    }
    Ok((i_size as f64).powi(2) * (b_size as f64).powf(1.0 - delta))
}

/// `|A₁|^{c·log₂ m}` for products of `2^m` shifted sets.
pub fn product_growth_rhs(a_size: u64, m: u32, c: f64) -> Result<f64> {
    if a_size == 0 {
        return Err(Error::Domain("|A| must be positive".into()));
    }
    let exponent = if m == 0 { 0.0 } else { c * (m as f64).log2() };
    Ok((a_size as f64).powf(exponent))
}

/// `C(α) = α/(1−α) + α/(2α−1)` for `1/2 < α < 1`.
pub fn c_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.5 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "C(alpha) needs 1/2 < alpha < 1, found {alpha}"
        )));
    }
    Ok(alpha / (1.0 - alpha) + alpha / (2.0 * alpha - 1.0))
}

/// `4^α·z^{2α}·𝔼|𝔉w(X)·Z_X(α)|²`, an upper bound for `E×(w, 𝒫_z)`.
pub fn energy_transfer_rhs(alpha: f64, z: u64, moment: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    if z == 0 {
        return Err(Error::Domain("z must be positive".into()));
    }
    Ok(4f64.powf(alpha) * (z as f64).powf(2.0 * alpha) * moment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> WeightNorms {
        WeightNorms {
            l1: 1.0,
            l2: 1.0,
            t_next: 1.0,
        }
    }

    #[test]
    fn degenerate_weight() {
        for n in [3.0, 16.0, 1e6] {
            let r = radziwill_rhs(n, unit(), 1, 1.0).unwrap();
            let expected = n * (2.0 * f64::log2(f64::log2(n))).exp();
            assert!((r.energy_form - expected).abs() <= 1e-12 * expected);
            assert!((r.l1_form - expected).abs() <= 1e-12 * expected);
            assert!(r.hypothesis_flags.values().all(|&b| b));
        }
        let norms = WeightNorms {
            l1: 3.0,
            l2: 2.0,
            t_next: 2000.0,
        };
        let off = radziwill_rhs(100.0, norms, 2, 0.0).unwrap();
        let expected = 100.0 * 4.0 * (2.0 * 100f64.log2().log2()).exp();
        assert!((off.energy_form - expected).abs() <= 1e-12 * expected);
        assert!(radziwill_rhs(2.0, unit(), 1, 1.0).is_err());
    }

    #[test]
    fn impossible_norms_are_flagged() {
        let bad = WeightNorms {
            l1: 1.0,
            l2: 2.0,
            t_next: 1.0,
        };
        let r = radziwill_rhs(10.0, bad, 1, 1.0).unwrap();
        assert!(!r.hypothesis_flags["energy_log_nonnegative"]);
        assert!(!r.hypothesis_flags["l1_at_least_l2"]);
    }

    #[test]
    fn pz_forms() {
        let r = pz_rhs(100.0, unit(), 1, 0.75, 1.0).unwrap();
        assert!((r.value - 100f64.powf(1.5)).abs() < 1e-9);
        let norms = WeightNorms {
            l1: 5.0,
            l2: 2.0,
            t_next: 300.0,
        };
        for z in [3.0, 50.0, 1000.0] {
            let a = pz_rhs(z, norms, 1, 1.0, 0.7).unwrap().value;
            let b = pz_rhs_eps(z, norms, 1, 1.0, 0.7).unwrap().value;
            assert!((a - b).abs() <= 1e-12 * a);
        }
        let huge = WeightNorms {
            l1: 1.0,
            l2: 1.0,
            t_next: 2f64.powi(100),
        };
        assert!(
            !pz_rhs(4.0, huge, 1, 0.75, 1.0).unwrap().hypothesis_flags
                ["log_t_at_most_sz_over_log_z"]
        );
        assert!(pz_rhs(2.0, unit(), 1, 0.75, 1.0).is_err());
    }

    #[test]
    fn ap_condition() {
        let c = ap_in_g_check(10_000, 128, 0.1, 1229, 1.0).unwrap();
        assert_eq!(c.lhs, 7.0);
        assert!(c.condition_holds && (c.rhs - 75.257).abs() < 1e-3);
        assert!(!ap_in_g_check(100, 2, 0.0, 25, 1.0).unwrap().condition_holds);
        let t1 = ap_in_g_check(100, 10, 0.5, 25, 1.0).unwrap().threshold;
        let t2 = ap_in_g_check(100, 20, 0.5, 25, 1.0).unwrap().threshold;
        assert_eq!(t2, 2.0 * t1);
        assert!(ap_in_g_check(2, 2, 0.1, 1, 1.0).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(tl_rhs(64, 2, 0.0).unwrap(), 64f64.powi(8));
        assert_eq!(tl_exponent(1, 5.0).unwrap(), 4.0);
        assert_eq!(inc_rhs(64, 100, 100, 0.0).unwrap(), 6400.0);
        assert_eq!(c_alpha(0.75).unwrap(), 4.5);
        assert!(c_alpha(0.5).is_err() && c_alpha(1.0).is_err());
        assert_eq!(e_f_rhs(32, 32, 0.0).unwrap(), 32768.0);
        assert_eq!(product_growth_rhs(16, 0, 1.0).unwrap(), 1.0);
        assert_eq!(t_as_rhs(256, 0.0, 0.0).unwrap(), 1.0);
        assert!((t_as_rhs(256, 0.0, 1.0).unwrap() - 8f64.exp()).abs() < 1e-9);
        assert_eq!(energy_transfer_rhs(0.5, 4, 1.0).unwrap(), 8.0);
    }

    #[test]
    fn shift_growth_hypotheses() {
        // An interval has doubling (2n − 1)/n < 2 < e.
        let k = 511.0 / 256.0;
        let f = as_hypotheses(256, k, 8, Some(1.5), 0.0, 1.0).unwrap();
        assert!(f["doubling_condition"] && f["alpha_in_range"]);
        assert!(f["s_size_condition"] && f["s_doubling_condition"]);
        assert!(!as_hypotheses(256, k, 8, None, 0.2, 1.0).unwrap()["alpha_in_range"]);
    }

    #[test]
    fn report_ratio() {
        let r = BoundReport::new("x", 3.0, 6.0)
            .constant("c", 1.0)
            .flag("h", true);
        assert_eq!(r.ratio, Some(0.5));
        assert_eq!(BoundReport::new("x", 3.0, 0.0).ratio, None);
    }

    proptest! {
        #[test]
        fn monotone_in_arguments(
            n in 3.0f64..1e9, t in 1.0f64..1e6, dt in 0.0f64..1e6,
            i in 2u64..1000, di in 0u64..1000, c in 0.0f64..3.0, dc in 0.0f64..3.0,
            b in 1u64..1000, db in 0u64..1000, delta in 0.0f64..1.0,
        ) {
            let norms = |t_next| WeightNorms { l1: 2.0, l2: 1.0, t_next };
            let r1 = radziwill_rhs(n, norms(t), 1, c).unwrap().energy_form;
            let r2 = radziwill_rhs(n, norms(t + dt), 1, c).unwrap().energy_form;
            prop_assert!(r2 >= r1);
            let r3 = radziwill_rhs(n, norms(t), 1, c + dc).unwrap().energy_form;
            prop_assert!(r3 >= r1);
            prop_assert!(tl_rhs(i + di, 3, c).unwrap() >= tl_rhs(i, 3, c).unwrap());
            prop_assert!(tl_rhs(i, 3, c + dc).unwrap() <= tl_rhs(i, 3, c).unwrap());
            prop_assert!(inc_rhs(i, b, b + db, delta).unwrap() >= inc_rhs(i, b, b, delta).unwrap());
            prop_assert!(inc_rhs(i + di, b, b, delta).unwrap() >= inc_rhs(i, b, b, delta).unwrap());
            let z = n.min(1e6);
            prop_assert!(pz_rhs(z, norms(t + dt), 1, 0.75, c).unwrap().value >= pz_rhs(z, norms(t), 1, 0.75, c).unwrap().value);
        }
    }
}
