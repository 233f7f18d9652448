use energy_lab::bounds::{
    ap_in_g_check, c_alpha, e_f_rhs, inc_rhs, pz_rhs, pz_rhs_eps, radziwill_rhs, t_as_rhs,
    t_as_witness_fraction, tl_exponent, tl_rhs, WeightNorms,
};
use energy_lab::energy::{
    additive_energy_with, multiplicative_energy_with, read_weight_file, t_energy_with,
    weighted_pair_energy, EnergyOp, EnergyValue,
};
use energy_lab::experiments::normalize_reals;
use energy_lab::numtheory::{factorize, sieve_primes_with};
use energy_lab::setcore::{
    difference_set_with, generate_with, parse_generator, product_set_with, sumset_with,
    write_set_file,
};
use energy_lab::zeta::{exact_z_moment, gcd_sum, gcd_sum_lhs, mc_moment, SampledExpr};
use energy_lab::Limits;
use serde_json::{json, Value};

use crate::args::{
    BoundFormula, EnergyArgs, EnergyOpArg, FactorArgs, GcdsumArgs, PrimesArgs, SetArgs, SetOpArg,
    ZetaExpr, ZetaMode, ZetaMomentArgs,
};
use crate::error::{CliError, CliResult};

/// Prints `v` as one JSON line with reals at 17 significant digits.
pub fn emit(v: Value) {
    println!("{}", normalize_reals(v));
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library results serialize")
}

fn energy_json(op: &str, sizes: [usize; 2], e: &EnergyValue) -> Value {
    json!({
        "op": op,
        "sizes": sizes,
        "energy": e.value,
        "diagonal_floor": e.diagonal_floor,
        "zero_in_input": e.zero_in_input,
    })
}

pub fn energy(args: &EnergyArgs, limits: &Limits) -> CliResult<Value> {
    let weighted = args.op == EnergyOpArg::Weighted;
    let higher = matches!(args.op, EnergyOpArg::T | EnergyOpArg::Tmul);
    if weighted != args.weight_a.is_some() || (weighted && args.set_a.is_some()) {
        return Err(CliError::Usage(
            "--op weighted takes --weight-a/--weight-b; other ops take --set-a/--set-b".into(),
        ));
    }
    if !weighted && args.weight_b.is_some() {
        return Err(CliError::Usage("--weight-b needs --op weighted".into()));
    }
    if higher != args.k.is_some() {
        return Err(CliError::Usage(
            "--k is required with --op t|tmul and only there".into(),
        ));
    }
    if higher && args.set_b.is_some() {
        return Err(CliError::Usage("--op t|tmul takes a single set".into()));
    }
    if weighted {
        let fa = read_weight_file(args.weight_a.as_ref().expect("checked above"))?;
        let fb = match &args.weight_b {
            Some(p) => read_weight_file(p)?,
            None => fa.clone(),
        };
        let e = weighted_pair_energy(&fa, &fb, EnergyOp::Sum)?;
        return Ok(json!({
            "op": "weighted",
            "sizes": [fa.len(), fb.len()],
            "energy": e,
            "diagonal_floor": null,
        }));
    }
    let a_text = args.set_a.as_deref().expect("required by clap");
    let spec_a = parse_generator(a_text)?;
    let spec_b = args.set_b.as_deref().map(parse_generator).transpose()?;
    let a = generate_with(&spec_a, limits)?;
    let b = match &spec_b {
        Some(s) => generate_with(s, limits)?,
        None => a.clone(),
    };
    let sizes = [a.len(), b.len()];
    Ok(match args.op {
        EnergyOpArg::Add => energy_json("add", sizes, &additive_energy_with(&a, &b, limits)?),
        EnergyOpArg::Mul => energy_json("mul", sizes, &multiplicative_energy_with(&a, &b, limits)?),
        EnergyOpArg::T | EnergyOpArg::Tmul => {
            let (name, op) = if args.op == EnergyOpArg::T {
                ("t", EnergyOp::Sum)
            } else {
                ("tmul", EnergyOp::Product)
            };
            let k = args.k.expect("checked above");
            let mut v = energy_json(name, sizes, &t_energy_with(&a, k, op, limits)?);
            v["sizes"] = json!([a.len()]);
            v["k"] = json!(k);
            v
        }
        EnergyOpArg::Weighted => unreachable!("handled above"),
    })
}

pub fn zeta_moment(args: &ZetaMomentArgs, limits: &Limits) -> CliResult<Value> {
    if args.mode == ZetaMode::Exact && args.expr != ZetaExpr::Euler {
        return Err(CliError::Usage(
            "--mode exact supports --expr euler only".into(),
        ));
    }
    if args.z == 0 {
        return Err(CliError::Lib(energy_lab::Error::Domain(
            "z must be positive".into(),
        )));
    }
    let sieve_to = match args.expr {
        ZetaExpr::Euler => 2 * args.z,
        ZetaExpr::Zeta => args.n_max,
    };
    let table = sieve_primes_with(sieve_to.max(2), limits)?;
    match args.mode {
        ZetaMode::Exact => {
            let m = exact_z_moment(args.z, args.alpha, args.l, &table)?;
            let mut v = to_value(&m);
            let obj = v.as_object_mut().expect("struct serializes to an object");
            let mut head = serde_json::Map::new();
            head.insert("mode".into(), json!("exact"));
            head.insert("expr".into(), json!("euler"));
            head.insert("z".into(), json!(args.z));
            head.insert("alpha".into(), json!(args.alpha));
            head.insert("l".into(), json!(args.l));
            head.append(obj);
            Ok(Value::Object(head))
        }
        ZetaMode::Mc => {
            let (name, expr) = match args.expr {
                ZetaExpr::Euler => (
                    "euler",
                    SampledExpr::RestrictedEuler {
                        alpha: args.alpha,
                        z: args.z,
                    },
                ),
                ZetaExpr::Zeta => (
                    "zeta",
                    SampledExpr::TruncatedZeta {
                        alpha: args.alpha,
                        n_max: args.n_max,
                    },
                ),
            };
            let est = mc_moment(&expr, args.l, args.samples, args.seed, &table)?;
            Ok(json!({
                "mode": "mc",
                "expr": name,
                "target": est.target,
                "l": args.l,
                "value": est.mean,
                "std_error": est.std_error,
                "samples": est.samples,
                "seed": args.seed,
            }))
        }
    }
}

pub fn gcdsum(args: &GcdsumArgs) -> CliResult<Value> {
    let w = read_weight_file(&args.weight)?;
    let g = gcd_sum(&w, args.alpha, args.trunc)?;
    let mut v = json!({
        "alpha": args.alpha,
        "trunc": args.trunc,
        "value": g.value,
        "interval": [g.lower(), g.upper()],
        "interval_width": g.interval_width,
        "double_sum": g.double_sum,
        "zeta_partial": g.zeta_partial,
        "zeta_tail_bound": g.zeta_tail_bound,
        "rounding_slack": g.rounding_slack,
    });
    if let Some(t) = args.lhs_tmax {
        let lhs = gcd_sum_lhs(&w, args.alpha, t)?;
        v["lhs_tmax"] = json!(t);
        v["lhs"] = json!(lhs);
        v["lhs_in_interval"] = json!(g.contains(lhs));
    }
    Ok(v)
}

pub fn primes(args: &PrimesArgs, limits: &Limits) -> CliResult<Value> {
    if args.lo >= args.hi {
        return Err(CliError::Lib(energy_lab::Error::Domain(format!(
            "need lo < hi, got [{}, {})",
            args.lo, args.hi
        ))));
    }
    let table = sieve_primes_with(args.hi.saturating_sub(1).max(2), limits)?;
    let ps = table.primes_between(args.lo, args.hi);
    let mut v = json!({"lo": args.lo, "hi": args.hi, "count": ps.len(), "last": ps.last()});
    if args.list {
        v["primes"] = json!(ps);
    }
    Ok(v)
}

pub fn factor(args: &FactorArgs, limits: &Limits) -> CliResult<Value> {
    let limit = args
        .limit
        .unwrap_or_else(|| args.n.min(limits.sieve_ceiling))
        .max(2);
    let table = sieve_primes_with(limit, limits)?;
    let f = factorize(args.n, &table)?;
    Ok(json!({"n": f.value, "factors": f.factors}))
}

pub fn set(args: &SetArgs, limits: &Limits) -> CliResult<Value> {
    let spec = parse_generator(&args.generator)?;
    let other = args.with.as_deref().map(parse_generator).transpose()?;
    if other.is_some() && args.op.is_none() {
        return Err(CliError::Usage("--with needs --op".into()));
    }
    let a = generate_with(&spec, limits)?;
    let (description, s) = match (args.op, &other) {
        (Some(op), Some(b_spec)) => {
            let b = generate_with(b_spec, limits)?;
            let (sym, s) = match op {
                SetOpArg::Sum => ("+", sumset_with(&a, &b, limits)?),
                SetOpArg::Diff => ("-", difference_set_with(&a, &b, limits)?),
                SetOpArg::Prod => ("*", product_set_with(&a, &b, limits)?),
            };
            (format!("({spec}) {sym} ({b_spec})"), s)
        }
        _ => (spec.to_string(), a),
    };
    if let Some(path) = &args.write {
        write_set_file(path, &s)?;
    }
    let mut v = json!({
        "set": description,
        "size": s.len(),
        "min": s.min(),
        "max": s.max(),
        "contains_zero": s.contains_zero(),
    });
    if args.list {
        v["elements"] = json!(s.as_slice());
    }
    Ok(v)
}

pub fn bound(formula: &BoundFormula, limits: &Limits) -> CliResult<Value> {
    Ok(match *formula {
        BoundFormula::Radziwill { n, l1, l2, t, s, c } => {
            let norms = WeightNorms { l1, l2, t_next: t };
            json!({"bound": "radziwill", "n": n, "s": s, "c": c,
                   "result": to_value(&radziwill_rhs(n, norms, s, c)?)})
        }
        BoundFormula::Pz {
            z,
            l2,
            t,
            s,
            alpha,
            eps,
            c,
        } => {
            let norms = WeightNorms {
                l1: f64::NAN,
                l2,
                t_next: t,
            };
            match eps {
                Some(e) => json!({"bound": "pz_eps", "z": z, "s": s, "eps": e, "c": c,
                                  "result": to_value(&pz_rhs_eps(z, norms, s, e, c)?)}),
                None => json!({"bound": "pz", "z": z, "s": s, "alpha": alpha, "c": c,
                               "result": to_value(&pz_rhs(z, norms, s, alpha, c)?)}),
            }
        }
        BoundFormula::ApInG { l, s_size, eps, k } => {
            let table = sieve_primes_with(l.max(2), limits)?;
            let count = table.count_up_to(l) as u64;
            json!({"bound": "ap_in_g", "l": l, "s_size": s_size, "eps": eps, "k": k,
                   "primes_up_to_l": count,
                   "result": to_value(&ap_in_g_check(l, s_size, eps, count, k)?)})
        }
        BoundFormula::Tl { i_size, l, c } => json!({
            "bound": "tl", "i_size": i_size, "l": l, "c": c,
            "exponent": tl_exponent(l, c)?, "value": tl_rhs(i_size, l, c)?,
        }),
        BoundFormula::As { a_size, alpha, c } => json!({
            "bound": "as", "a_size": a_size, "alpha": alpha, "c": c,
            "growth_factor": t_as_rhs(a_size, alpha, c)?,
            "witness_fraction": t_as_witness_fraction(a_size, alpha, c)?,
        }),
        BoundFormula::Inc {
            i_size,
            b_size,
            c_size,
            delta,
        } => json!({
            "bound": "inc", "i_size": i_size, "b_size": b_size, "c_size": c_size,
            "delta": delta, "value": inc_rhs(i_size, b_size, c_size, delta)?,
        }),
        BoundFormula::EF {
            i_size,
            b_size,
            delta,
        } => json!({
            "bound": "e_f", "i_size": i_size, "b_size": b_size, "delta": delta,
            "value": e_f_rhs(i_size, b_size, delta)?,
        }),
        BoundFormula::CAlpha { alpha } => json!({
            "bound": "c_alpha", "alpha": alpha, "value": c_alpha(alpha)?,
        }),
    })
}
