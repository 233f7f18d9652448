use rayon::prelude::*;
use serde_json::{json, Value};

use super::{run_points, sweep_or, ExperimentConfig, PointResult, RunContext, RunOutcome};
use crate::bounds::{
    ap_in_g_check, as_hypotheses, e_f_rhs, energy_transfer_rhs, inc_rhs, product_growth_rhs,
    t_as_rhs, t_as_witness_fraction, tl_exponent, tl_rhs, BoundReport,
};
use crate::energy::{
    additive_energy_with, incidence_count_with, longest_zero_based_ap, multiplicative_energy_with,
    t_energy_with, weighted_pair_energy, weighted_t_energy, EnergyOp, Weight,
};
use crate::error::{Error, Result};
use crate::numtheory::{primes_in, sieve_primes_with};
use crate::rng::{stream_key, CounterRng};
use crate::setcore::{
    dilate, pair_set_size, parse_generator, product_set_with, signed_sumset, sumset_with,
    GeneratorSpec, IntSet, PairOp,
};
use crate::zeta::{
    exact_fourier_euler_moment, exact_z_moment, gcd_sum, gcd_sum_lhs, mc_moment, SampledExpr,
};

/// Shifts are enumerated exhaustively up to this many elements of A.
const EXHAUSTIVE_SHIFTS_MAX: usize = 512;
const SHIFT_STREAM: u64 = 0x0073_6869_6674; // "shift"
const WEIGHT_STREAM: u64 = 0x7765_6967_6874; // "weight"
const ROW_STREAM: u64 = 0x0072_6f77; // "row"

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

/// Energy of `d·𝒫^(l)` against S, normalized by `|𝒫^(l)|²|S|`.
pub fn run_repulsion(config: &ExperimentConfig, ctx: &RunContext) -> Result<RunOutcome> {
    let (s_spec, s) = config.set("s", &ctx.limits)?;
    if s.is_empty() {
        return Err(Error::Domain("repulsion needs a nonempty S".into()));
    }
    let ls = sweep_or(&config.sweep.l_values, &[500, 2000, 8000]);
    let ds = sweep_or(&config.sweep.d_values, &[1]);
    let epss = sweep_or(&config.sweep.eps, &[0.1]);
    if let Some(&l) = ls.iter().find(|&&l| l < 3) {
        return Err(Error::Domain(format!("l must be at least 3, found {l}")));
    }
    if ds.contains(&0) {
        return Err(Error::Domain("dilation d must be nonzero".into()));
    }
    let k = config.constant("k");
    let table = sieve_primes_with(*ls.iter().max().unwrap(), &ctx.limits)?;
    let mut points = Vec::new();
    for &l in &ls {
        for &d in &ds {
            for &eps in &epss {
                points.push((l, d, eps));
            }
        }
    }
    let mut outcome = run_points(config, ctx, &points, |&(l, d, eps)| {
        let p = primes_in(2, l + 1, &table)?;
        let e = multiplicative_energy_with(&dilate(&p, d)?, &s, &ctx.limits)?;
        if e.value < e.diagonal_floor {
            return Err(Error::Invariant(format!(
                "energy {} below the diagonal floor {}",
                e.value, e.diagonal_floor
            )));
        }
        let (np, ns) = (p.len() as f64, s.len() as f64);
        let normalized = e.value as f64 / (np * np * ns);
        let check = ap_in_g_check(l, s.len() as u64, eps, p.len() as u64, k)?;
        Ok(PointResult {
            params: json!({"l": l, "d": d, "eps": eps, "s": s_spec}),
            measured: json!({
                "primes": p.len(),
                "s_size": s.len(),
                "energy": e.value,
                "diagonal_floor": e.diagonal_floor,
                "normalized_energy": normalized,
                "trivial_floor": 1.0 / np,
                "log_s": check.lhs,
                "condition_rhs": check.rhs,
            }),
            bounds: vec![
                BoundReport::new("energy_vs_threshold", e.value as f64, check.threshold)
                    .constant("eps", eps)
                    .constant("k", k)
                    .flag("log_s_condition", check.condition_holds),
            ],
        })
    })?;
    // Trend along l within each (d, eps) series.
    let records = &mut outcome.records;
    for i in 0..records.len() {
        let key = (
            records[i].params["d"].clone(),
            records[i].params["eps"].clone(),
        );
        let current = records[i].measured["normalized_energy"].as_f64();
        let previous = records[..i]
            .iter()
            .rev()
            .find(|r| (r.params["d"].clone(), r.params["eps"].clone()) == key)
            .and_then(|r| r.measured["normalized_energy"].as_f64());
        let trend = match (previous, current) {
            (Some(p), Some(c)) => Value::Bool(c < p),
            _ => Value::Null,
        };
        records[i].measured["decreasing_from_previous_l"] = trend;
    }
    Ok(outcome)
}

/// Longest zero-based progression and product-set doubling of each set.
pub fn run_ap_search(config: &ExperimentConfig, ctx: &RunContext) -> Result<RunOutcome> {
    if config.sets.is_empty() {
        return Err(Error::Domain("ap-search needs at least one set".into()));
    }
    let names: Vec<String> = config.sets.keys().cloned().collect();
    run_points(config, ctx, &names, |name| {
        let (spec, s) = config.set(name, &ctx.limits)?;
        let ss = pair_set_size(&s, &s, PairOp::Product, &ctx.limits)?;
        let ap = longest_zero_based_ap(&s);
        let extent = s.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as u128;
        if ap.length as u128 * ap.step.unsigned_abs() as u128 > extent {
            return Err(Error::Invariant(format!(
                "progression of length {} and step {} leaves the set",
                ap.length, ap.step
            )));
        }
        let n = s.len() as f64;
        let reference = (s.len() >= 2).then(|| n.log2() * n.log2().log2());
        let mut bounds = Vec::new();
        if let Some(r) = reference {
            bounds.push(BoundReport::new(
                "ap_length_vs_reference",
                ap.length as f64,
                r,
            ));
        }
        Ok(PointResult {
            params: json!({"set": name, "s": spec}),
            measured: json!({
                "s_size": s.len(),
                "product_set_size": ss,
                "doubling": ratio(ss as f64, n),
                "ap_length": ap.length,
                "ap_step": ap.step,
                "reference": reference,
                "ap_over_reference": reference.and_then(|r| ratio(ap.length as f64, r)),
            }),
            bounds,
        })
    })
}

/// `|(A−a)S|` over shifts a, summarized per growth exponent α.
pub fn run_shift_growth(config: &ExperimentConfig, ctx: &RunContext) -> Result<RunOutcome> {
    let (a_spec, a) = config.set("a", &ctx.limits)?;
    let (s_spec, s) = config.set("s", &ctx.limits)?;
    if a.len() < 2 || s.is_empty() {
        return Err(Error::Domain(
            "shift-growth needs |A| >= 2 and a nonempty S".into(),
        ));
    }
    let exhaustive = a.len() <= EXHAUSTIVE_SHIFTS_MAX;
    let shifts: Vec<i64> = if exhaustive {
        a.iter().collect()
    } else {
        let mut rng = CounterRng::new(config.require_seed()?, SHIFT_STREAM);
        rng.sample_indices(a.len(), EXHAUSTIVE_SHIFTS_MAX)
            .into_iter()
            .map(|i| a.as_slice()[i])
            .collect()
    };
    let sizes: Vec<(i64, usize, usize)> = shifts
        .par_iter()
        .map(|&x| {
            let neg = x
                .checked_neg()
                .ok_or_else(|| Error::Overflow(format!("-({x})")))?;
            let shifted = a.translate(neg)?;
            let size = pair_set_size(&shifted, &s, PairOp::Product, &ctx.limits)? as usize;
            // 0 ∈ A − a, so 0 is always one of the products.
            Ok((x, size, size - 1))
        })
        .collect::<Result<_>>()?;
    let k_a = sumset_with(&a, &a, &ctx.limits)?.len() as f64 / a.len() as f64;
    let k_s = sumset_with(&s, &s, &ctx.limits)?.len() as f64 / s.len() as f64;
    let (c, k) = (config.constant("c"), config.constant("k"));
    let alphas = sweep_or(&config.sweep.alpha, &[0.0]);
    let ns = s.len() as f64;
    run_points(config, ctx, &alphas, |&alpha| {
        let growth = t_as_rhs(a.len() as u64, alpha, c)?;
        let witness = t_as_witness_fraction(a.len() as u64, alpha, c)?;
        let ratios: Vec<f64> = sizes.iter().map(|&(_, n, _)| n as f64 / ns).collect();
        let count = ratios.len() as f64;
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        let mean = ratios.iter().sum::<f64>() / count;
        let exceeding = ratios.iter().filter(|&&r| r >= growth).count() as f64 / count;
        let mut levels = Vec::new();
        let mut level = 1.0;
        while level <= max {
            let frac = ratios.iter().filter(|&&r| r >= level).count() as f64 / count;
            levels.push(json!({"level": level, "fraction": frac}));
            level *= 2.0;
        }
        let flags = as_hypotheses(a.len() as u64, k_a, s.len() as u64, Some(k_s), alpha, k)?;
        let per_shift: Vec<Value> = sizes
            .iter()
            .map(|&(x, n, nz)| json!({"a": x, "size": n, "nonzero": nz}))
            .collect();
        Ok(PointResult {
            params: json!({"alpha": alpha, "a": a_spec, "s": s_spec, "c": c, "k": k}),
            measured: json!({
                "a_size": a.len(),
                "s_size": s.len(),
                "a_doubling": k_a,
                "s_doubling": k_s,
                "shifts": sizes.len(),
                "exhaustive": exhaustive,
                "min_ratio": min,
                "max_ratio": max,
                "mean_ratio": mean,
                "growth_rhs": growth,
                "fraction_exceeding_rhs": exceeding,
                "growth_levels": levels,
                "per_shift": per_shift,
            }),
            bounds: vec![
                BoundReport::new("max_growth_vs_rhs", max, growth)
                    .constant("c", c)
                    .flags(&flags),
                BoundReport::new("witness_fraction_vs_rhs", exceeding, witness)
                    .constant("c", c)
                    .flags(&flags),
            ],
        })
    })
}

fn pow_spec(config: &ExperimentConfig, name: &str) -> Result<(u32, u64)> {
    let text = config
        .sets
        .get(name)
        .ok_or_else(|| Error::Domain(format!("{} needs a set named {name:?}", config.kind)))?;
    match parse_generator(text)? {
        GeneratorSpec::Pow { k, n } => Ok((k, n)),
        other => Err(Error::Domain(format!(
            "{} needs f given as pow:k,n, found {other}",
            config.kind
        ))),
    }
}

/// `T_{2^j}(f(I))` against `|I|^{2^{j+1} − c log j}` for `f(i) = i^k`.
pub fn run_tl_scan(config: &ExperimentConfig, ctx: &RunContext) -> Result<RunOutcome> {
    let (power, n) = pow_spec(config, "f")?;
    let (spec, fi) = config.set("f", &ctx.limits)?;
    if n < 2 {
        return Err(Error::Domain("tl-scan needs |I| >= 2".into()));
    }
    let interval = IntSet::interval(n);
    let tripling = signed_sumset(&interval, 2, 1, &ctx.limits)?.len() as f64;
    let js = sweep_or(&config.sweep.j_values, &[0, 1, 2, 3]);
    let epss = sweep_or(&config.sweep.eps, &[0.1]);
    let (c, k) = (config.constant("c"), config.constant("k"));
    let log_i = (n as f64).log2();
    let mut points = Vec::new();
    for &j in &js {
        if j > 16 {
            return Err(Error::Domain(format!("j = {j} is too large")));
        }
        for &eps in &epss {
            points.push((j, eps));
        }
    }
    run_points(config, ctx, &points, |&(j, eps)| {
        let tripling_ratio = tripling / (n as f64).powf(1.0 + eps);
        let params = json!({"j": j, "eps": eps, "f": spec, "power": power, "i_size": n, "c": c});
        let base = json!({
            "summands": 1u64 << j,
            "tripling": tripling,
            "tripling_ratio": tripling_ratio,
        });
        let mut measured = base.as_object().unwrap().clone();
        let mut bounds = Vec::new();
        if j == 0 {
            let t1 = fi.len() as f64;
            measured.insert("t".into(), json!(fi.len()));
            measured.insert("t_proof_convention".into(), json!(fi.len() * fi.len()));
            measured.insert("conventions_differ".into(), json!(fi.len() != 1));
            measured.insert("exponent".into(), json!(t1.log2() / log_i));
            measured.insert("rhs_exponent".into(), Value::Null);
        } else {
            let t =
                t_energy_with(&fi, 1 << j, EnergyOp::Sum, &ctx.limits).map_err(|e| match e {
                    Error::Overflow(m) => Error::Overflow(format!("{m}; use a smaller n")),
                    other => other,
                })?;
            let tv = t.value as f64;
            measured.insert("t".into(), json!(t.value));
            measured.insert("exponent".into(), json!(tv.log2() / log_i));
            measured.insert("rhs_exponent".into(), json!(tl_exponent(j, c)?));
            bounds.push(
                BoundReport::new("t_vs_rhs", tv, tl_rhs(n, j, c)?)
                    .constant("c", c)
                    .constant("eps", eps)
                    .flag("tripling_condition", tripling_ratio <= k),
            );
        }
        Ok(PointResult {
            params,
            measured: Value::Object(measured),
            bounds,
        })
    })
}

/// Incidences `f(i) + b = c` and `E⁺(f(I), B)` against their bounds.
pub fn run_incidence(config: &ExperimentConfig, ctx: &RunContext) -> Result<RunOutcome> {
    let (f_spec, fi) = config.set("f", &ctx.limits)?;
    let (b_spec, b) = config.set("b", &ctx.limits)?;
    let (c_spec, c) = config.set("c", &ctx.limits)?;
    if fi.is_empty() || b.is_empty() || c.is_empty() {
        return Err(Error::Domain(
            "incidence needs nonempty f(I), B and C".into(),
        ));
    }
    let sigma = incidence_count_with(&fi, &b, &c, &ctx.limits)?;
    let energy = additive_energy_with(&fi, &b, &ctx.limits)?.value;
    let common = fi.iter().filter(|&x| c.contains(x)).count();
    let deltas = sweep_or(&config.sweep.delta, &[0.0]);
    run_points(config, ctx, &deltas, |&delta| {
        let (ni, nb, nc) = (fi.len() as u64, b.len() as u64, c.len() as u64);
        Ok(PointResult {
            params: json!({"delta": delta, "f": f_spec, "b": b_spec, "c": c_spec}),
            measured: json!({
                "incidences": sigma,
                "energy": energy,
                "f_size": ni,
                "b_size": nb,
                "c_size": nc,
                "f_c_overlap": common,
            }),
            bounds: vec![
                BoundReport::new(
                    "incidences_vs_rhs",
                    sigma as f64,
                    inc_rhs(ni, nb, nc, delta)?,
                )
                .constant("delta", delta),
                BoundReport::new("energy_vs_rhs", energy as f64, e_f_rhs(ni, nb, delta)?)
                    .constant("delta", delta),
            ],
        })
    })
}

/// `|(A₁+z₁)(A₂+z₂)…(A_{2^m}+z_{2^m})|`, cycling through the configured sets
/// (in name order) and shifts.
pub fn run_product_growth(config: &ExperimentConfig, ctx: &RunContext) -> Result<RunOutcome> {
    if config.sets.is_empty() {
        return Err(Error::Domain(
            "product-growth needs at least one set".into(),
        ));
    }
    let sets: Vec<(String, String, IntSet)> = config
        .sets
        .keys()
        .map(|name| {
            config
                .set(name, &ctx.limits)
                .map(|(spec, s)| (name.clone(), spec, s))
        })
        .collect::<Result<_>>()?;
    let shifts = sweep_or(&config.sweep.shifts, &[1]);
    let ms = sweep_or(&config.sweep.m_values, &[0, 1, 2]);
    if let Some(&m) = ms.iter().find(|&&m| m > 6) {
        return Err(Error::Domain(format!("m = {m} gives too many factors")));
    }
    let c = config.constant("c");
    let factor = |i: usize| sets[i % sets.len()].2.translate(shifts[i % shifts.len()]);
    let first = factor(0)?;
    run_points(config, ctx, &ms, |&m| {
        let count = 1usize << m;
        let mut prod = first.clone();
        for i in 1..count {
            prod = product_set_with(&prod, &factor(i)?, &ctx.limits)?;
            ctx.limits
                .check_cardinality("iterated product set", prod.len() as u128)?;
        }
        let a1 = sets[0].2.len() as u64;
        let names: Vec<&str> = sets.iter().map(|(n, _, _)| n.as_str()).collect();
        let specs: Vec<&str> = sets.iter().map(|(_, s, _)| s.as_str()).collect();
        Ok(PointResult {
            params: json!({"m": m, "sets": names, "specs": specs, "shifts": shifts, "c": c}),
            measured: json!({
                "factors": count,
                "a1_size": a1,
                "first_factor_size": first.len(),
                "product_size": prod.len(),
            }),
            bounds: vec![BoundReport::new(
                "product_size_vs_rhs",
                prod.len() as f64,
                product_growth_rhs(a1, m, c)?,
            )
            .constant("c", c)
            .flag("shifts_nonzero", !shifts.contains(&0))],
        })
    })
}

#[derive(Debug, Clone)]
enum Check {
    Parseval {
        w: usize,
        samples: u64,
    },
    FourthMoment {
        w: usize,
        samples: u64,
    },
    Gcd {
        w: usize,
        alpha: f64,
    },
    Euler {
        z: u64,
        l: u32,
        alpha: f64,
        samples: u64,
    },
    Transfer {
        w: usize,
        alpha: f64,
        z: u64,
    },
}

/// Weight `index` of the suite: support a random subset of `[1, 30]` of size
/// at most 20, values in `(0, 1]`.
pub fn suite_weight(seed: u64, index: u64) -> Weight {
    let mut rng = CounterRng::new(seed, WEIGHT_STREAM.wrapping_add(index));
    let size = 1 + rng.below(20) as usize;
    let support = rng.sample_indices(30, size);
    Weight::new(
        support
            .into_iter()
            .map(|i| (i as i64 + 1, 1.0 - rng.next_f64())),
    )
    .expect("support in [1, 30] with positive values")
}

fn mc_fields(mean: f64, se: f64, exact: f64) -> Value {
    let z = if se > 0.0 {
        Some((mean - exact) / se)
    } else {
        None
    };
    json!({
        "mc_mean": mean,
        "std_error": se,
        "exact": exact,
        "z_score": z,
        "within_5_std_errors": (mean - exact).abs() <= 5.0 * se,
    })
}

/// The Parseval, fourth-moment, GCD, Euler-moment and energy-transfer checks.
pub fn run_identity_suite(config: &ExperimentConfig, ctx: &RunContext) -> Result<RunOutcome> {
    let seed = config.require_seed()?;
    let n_weights = config.constant_or("weights", 5.0);
    if !(1.0..=1000.0).contains(&n_weights) || n_weights.fract() != 0.0 {
        return Err(Error::Domain(format!(
            "weights must be an integer in [1, 1000], found {n_weights}"
        )));
    }
    let t_max = config.constant_or("t_max", 1e4);
    if !(1.0..=1e8).contains(&t_max) || t_max.fract() != 0.0 {
        return Err(Error::Domain(format!(
            "t_max must be an integer in [1, 1e8], found {t_max}"
        )));
    }
    let t_max = t_max as u64;
    let weights: Vec<Weight> = (0..n_weights as u64)
        .map(|i| suite_weight(seed, i))
        .collect();
    let samples = sweep_or(&config.sweep.samples, &[10_000]);
    let alphas = sweep_or(&config.sweep.alpha, &[0.5, 0.75, 1.0]);
    let zs = sweep_or(&config.sweep.z_values, &[10, 30, 50]);
    let ls = sweep_or(&config.sweep.moments, &[1, 2, 3]);
    let max_z = *zs.iter().max().unwrap();
    if max_z == 0 {
        return Err(Error::Domain("z must be positive".into()));
    }
    let table = sieve_primes_with(2 * max_z, &ctx.limits)?;
    let mut points = Vec::new();
    for &n in &samples {
        for w in 0..weights.len() {
            points.push(Check::Parseval { w, samples: n });
            points.push(Check::FourthMoment { w, samples: n });
        }
    }
    for w in 0..weights.len() {
        for &alpha in alphas.iter().filter(|&&a| a > 0.5) {
            points.push(Check::Gcd { w, alpha });
        }
    }
    for &n in &samples {
        for &z in &zs {
            for &l in &ls {
                for &alpha in &alphas {
                    points.push(Check::Euler {
                        z,
                        l,
                        alpha,
                        samples: n,
                    });
                }
            }
        }
    }
    for w in 0..weights.len() {
        for &alpha in &alphas {
            for &z in &zs {
                points.push(Check::Transfer { w, alpha, z });
            }
        }
    }
    let indexed: Vec<(u64, Check)> = points
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i as u64, c))
        .collect();
    let weight_json = |w: usize| -> Value {
        Value::Array(weights[w].iter().map(|(n, v)| json!([n, v])).collect())
    };
    run_points(config, ctx, &indexed, |(row, check)| {
        let row_seed = stream_key(seed ^ ROW_STREAM, *row);
        Ok(match *check {
            Check::Parseval { w, samples } => {
                let e = mc_moment(
                    &SampledExpr::Fourier(weights[w].clone()),
                    1,
                    samples,
                    row_seed,
                    &table,
                )?;
                PointResult {
                    params: json!({"identity": "parseval", "weight": w, "samples": samples, "entries": weight_json(w)}),
                    measured: mc_fields(e.mean, e.std_error, weights[w].l2_squared()),
                    bounds: vec![],
                }
            }
            Check::FourthMoment { w, samples } => {
                let e = mc_moment(
                    &SampledExpr::Fourier(weights[w].clone()),
                    2,
                    samples,
                    row_seed,
                    &table,
                )?;
                let exact = weighted_t_energy(&weights[w], 2, EnergyOp::Product)?;
                PointResult {
                    params: json!({"identity": "fourth_moment", "weight": w, "samples": samples, "entries": weight_json(w)}),
                    measured: mc_fields(e.mean, e.std_error, exact),
                    bounds: vec![],
                }
            }
            Check::Gcd { w, alpha } => {
                let rhs = gcd_sum(&weights[w], alpha, t_max)?;
                let lhs = gcd_sum_lhs(&weights[w], alpha, t_max)?;
                PointResult {
                    params: json!({"identity": "gcd", "weight": w, "alpha": alpha, "trunc": t_max, "entries": weight_json(w)}),
                    measured: json!({
                        "lhs": lhs,
                        "rhs": rhs.value,
                        "interval_width": rhs.interval_width,
                        "lower": rhs.lower(),
                        "upper": rhs.upper(),
                        "contained": rhs.contains(lhs),
                    }),
                    bounds: vec![],
                }
            }
            Check::Euler {
                z,
                l,
                alpha,
                samples,
            } => {
                let exact = exact_z_moment(z, alpha, l, &table)?;
                let e = mc_moment(
                    &SampledExpr::RestrictedEuler { alpha, z },
                    l,
                    samples,
                    row_seed,
                    &table,
                )?;
                let mut m = mc_fields(e.mean, e.std_error, exact.value);
                m["log2_exact"] = json!(exact.log2_value);
                m["bound_exponent"] = json!(exact.bound_exponent);
                m["per_prime_ok"] = json!(exact.per_prime_ok);
                let mut bounds = Vec::new();
                if let Some(b) = exact.bound {
                    bounds.push(
                        BoundReport::new("exact_moment_vs_bound", exact.value, b)
                            .flag("l_at_most_z_alpha", exact.hypothesis_holds),
                    );
                }
                PointResult {
                    params: json!({"identity": "euler_moment", "z": z, "l": l, "alpha": alpha, "samples": samples}),
                    measured: m,
                    bounds,
                }
            }
            Check::Transfer { w, alpha, z } => {
                let pz = IntSet::new(table.primes_between(z, 2 * z).iter().map(|&p| p as i64))?;
                let energy = weighted_pair_energy(&weights[w], &pz, EnergyOp::Product)?;
                let moment =
                    exact_fourier_euler_moment(&weights[w], alpha, z, &table, &ctx.limits)?;
                let rhs = energy_transfer_rhs(alpha, z, moment)?;
                PointResult {
                    params: json!({"identity": "energy_transfer", "weight": w, "alpha": alpha, "z": z, "entries": weight_json(w)}),
                    measured: json!({"energy": energy, "moment": moment, "holds": energy <= rhs}),
                    bounds: vec![BoundReport::new("energy_vs_moment_bound", energy, rhs)],
                }
            }
        })
    })
}
