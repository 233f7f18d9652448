//! Config-driven experiment harnesses.
//!
//! An experiment expands its config into parameter points, evaluates them in
//! parallel and returns one [`ResultRecord`] per point in point order. Every
//! measured field is a pure function of the config and seed; only
//! `duration_ms` depends on the machine.

mod persist;
mod runs;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::setcore::{generate_with, parse_generator, IntSet};

pub use persist::{persist, persist_partial, to_csv_string, to_jsonl_string, OutputFormat};
pub use runs::{
    run_ap_search, run_identity_suite, run_incidence, run_product_growth, run_repulsion,
    run_shift_growth, run_tl_scan,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Repulsion,
    ApSearch,
    ShiftGrowth,
    TlScan,
    Incidence,
    ProductGrowth,
    Identities,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Repulsion => "repulsion",
            ExperimentKind::ApSearch => "ap-search",
            ExperimentKind::ShiftGrowth => "shift-growth",
            ExperimentKind::TlScan => "tl-scan",
            ExperimentKind::Incidence => "incidence",
            ExperimentKind::ProductGrowth => "product-growth",
            ExperimentKind::Identities => "identities",
        }
    }

    /// Whether every run draws random numbers. Shift growth samples only
    /// for large sets and asks for a seed then.
    pub fn is_stochastic(self) -> bool {
        self == ExperimentKind::Identities
    }
}

impl std::fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameter sweeps. An absent field takes the experiment's default; a
/// present field must be nonempty.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub l_values: Option<Vec<u64>>,
    pub z_values: Option<Vec<u64>>,
    pub alpha: Option<Vec<f64>>,
    pub eps: Option<Vec<f64>>,
    pub s_values: Option<Vec<u32>>,
    /// Moment orders `l` of `𝔼|·|^{2l}`.
    pub moments: Option<Vec<u32>>,
    pub samples: Option<Vec<u64>>,
    pub d_values: Option<Vec<i64>>,
    pub j_values: Option<Vec<u32>>,
    pub m_values: Option<Vec<u32>>,
    pub delta: Option<Vec<f64>>,
    pub shifts: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Set name to generator spec.
    #[serde(default)]
    pub sets: BTreeMap<String, String>,
    #[serde(default)]
    pub sweep: Sweep,
    pub seed: Option<u64>,
    /// Overrides of the unspecified constants; each defaults to 1.
    #[serde(default)]
    pub constants: BTreeMap<String, f64>,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            sets: BTreeMap::new(),
            sweep: Sweep::default(),
            seed: None,
            constants: BTreeMap::new(),
            output: None,
        }
    }

    pub fn with_set(mut self, name: &str, spec: &str) -> Self {
        self.sets.insert(name.to_string(), spec.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn constant(&self, name: &str) -> f64 {
        self.constant_or(name, 1.0)
    }

    pub fn constant_or(&self, name: &str, default: f64) -> f64 {
        self.constants.get(name).copied().unwrap_or(default)
    }

    pub(crate) fn set(&self, name: &str, limits: &Limits) -> Result<(String, IntSet)> {
        let text = self
            .sets
            .get(name)
            .ok_or_else(|| Error::Domain(format!("{} needs a set named {name:?}", self.kind)))?;
        let spec = parse_generator(text)?;
        Ok((spec.to_string(), generate_with(&spec, limits)?))
    }

    pub(crate) fn require_seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::Domain(format!("{} is stochastic and needs a seed", self.kind)))
    }

    /// Checks the sweep invariants without running anything.
    pub fn validate(&self) -> Result<()> {
        let s = &self.sweep;
        let lens = [
            ("l_values", s.l_values.as_ref().map(Vec::len)),
            ("z_values", s.z_values.as_ref().map(Vec::len)),
            ("alpha", s.alpha.as_ref().map(Vec::len)),
            ("eps", s.eps.as_ref().map(Vec::len)),
            ("s_values", s.s_values.as_ref().map(Vec::len)),
            ("moments", s.moments.as_ref().map(Vec::len)),
            ("samples", s.samples.as_ref().map(Vec::len)),
            ("d_values", s.d_values.as_ref().map(Vec::len)),
            ("j_values", s.j_values.as_ref().map(Vec::len)),
            ("m_values", s.m_values.as_ref().map(Vec::len)),
            ("delta", s.delta.as_ref().map(Vec::len)),
            ("shifts", s.shifts.as_ref().map(Vec::len)),
        ];
        if let Some((name, _)) = lens.iter().find(|(_, n)| *n == Some(0)) {
            return Err(Error::Domain(format!("sweep {name} is empty")));
        }
        if self.kind.is_stochastic() {
            self.require_seed()?;
        }
        Ok(())
    }
}

/// Sweep values or the default when the field is absent.
pub(crate) fn sweep_or<T: Clone>(field: &Option<Vec<T>>, default: &[T]) -> Vec<T> {
    field.clone().unwrap_or_else(|| default.to_vec())
}

/// One evaluated parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub kind: ExperimentKind,
    pub params: Value,
    pub measured: Value,
    pub bounds: Value,
    pub seed: Option<u64>,
    pub duration_ms: Option<u64>,
}

impl ResultRecord {
    /// `kind {params}` followed by the scalar measured fields.
    pub fn summary(&self) -> String {
        let scalars: serde_json::Map<String, Value> = self
            .measured
            .as_object()
            .map(|m| {
                m.iter()
                    .filter(|(_, v)| !v.is_array() && !v.is_object())
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect()
            })
            .unwrap_or_default();
        format!("{} {} {}", self.kind, self.params, Value::Object(scalars))
    }
}

/// Shared run settings.
#[derive(Debug, Clone, Default)]
pub struct RunContext {
    pub limits: Limits,
    /// Set asynchronously to stop before the next parameter point.
    pub cancel: Option<Arc<AtomicBool>>,
    /// Record wall-clock durations.
    pub timestamps: bool,
}

impl RunContext {
    fn cancelled(&self) -> bool {
        self.cancel
            .as_ref()
            .is_some_and(|c| c.load(Ordering::SeqCst))
    }
}

/// Records of a run; `interrupted` is set when cancellation skipped points.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub records: Vec<ResultRecord>,
    pub interrupted: bool,
}

/// Measured part of a record, before bookkeeping fields are attached.
pub(crate) struct PointResult {
    pub params: Value,
    pub measured: Value,
    pub bounds: Vec<crate::bounds::BoundReport>,
}

pub(crate) fn run_points<P, F>(
    config: &ExperimentConfig,
    ctx: &RunContext,
    points: &[P],
    eval: F,
) -> Result<RunOutcome>
where
    P: Sync,
    F: Fn(&P) -> Result<PointResult> + Sync,
{
    let results: Vec<Option<Result<ResultRecord>>> = points
        .par_iter()
        .map(|p| {
            if ctx.cancelled() {
                return None;
            }
            let start = Instant::now();
            Some(eval(p).and_then(|r| {
                Ok(ResultRecord {
                    kind: config.kind,
                    params: normalize_reals(r.params),
                    measured: normalize_reals(r.measured),
                    bounds: normalize_reals(serde_json::to_value(&r.bounds).map_err(|e| {
                        Error::Invariant(format!("bound report not serializable: {e}"))
                    })?),
                    seed: config.seed,
                    duration_ms: ctx.timestamps.then(|| start.elapsed().as_millis() as u64),
                })
            }))
        })
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut interrupted = false;
    for r in results {
        match r {
            Some(r) => records.push(r?),
            None => interrupted = true,
        }
    }
    Ok(RunOutcome {
        records,
        interrupted,
    })
}

/// Rewrites every non-integer JSON number with 17 significant digits.
pub fn normalize_reals(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            let text = n.to_string();
            if text.contains(['.', 'e', 'E']) {
                match text.parse::<f64>() {
                    Ok(x) if x.is_finite() => format_real(x),
                    _ => Value::Number(n),
                }
            } else {
                Value::Number(n)
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize_reals).collect()),
        Value::Object(m) => Value::Object(
            m.into_iter()
                .map(|(k, v)| (k, normalize_reals(v)))
                .collect(),
        ),
        other => other,
    }
}

/// `x` as a JSON number in `d.ddddddddddddddddde±x` form; null when not finite.
pub fn format_real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse().expect("formatted real is a JSON number"))
}

/// Runs the experiment named by `config.kind`.
pub fn run(config: &ExperimentConfig, ctx: &RunContext) -> Result<RunOutcome> {
    config.validate()?;
    match config.kind {
        ExperimentKind::Repulsion => run_repulsion(config, ctx),
        ExperimentKind::ApSearch => run_ap_search(config, ctx),
        ExperimentKind::ShiftGrowth => run_shift_growth(config, ctx),
        ExperimentKind::TlScan => run_tl_scan(config, ctx),
        ExperimentKind::Incidence => run_incidence(config, ctx),
        ExperimentKind::ProductGrowth => run_product_growth(config, ctx),
        ExperimentKind::Identities => run_identity_suite(config, ctx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn reals_use_seventeen_digits() {
        let v = normalize_reals(
            json!({"a": 0.1, "b": 3, "c": [1.5, null], "d": 340282366920938463463374607431768211455u128}),
        );
        assert_eq!(
            v.to_string(),
            r#"{"a":1.0000000000000001e-1,"b":3,"c":[1.5000000000000000e+0,null],"d":340282366920938463463374607431768211455}"#
        );
        let back: f64 = v["a"].as_f64().unwrap();
        assert_eq!(back, 0.1);
        assert_eq!(format_real(f64::NAN), Value::Null);
    }

    #[test]
    fn config_validation() {
        let mut c = ExperimentConfig::new(ExperimentKind::Identities);
        assert!(c.validate().is_err());
        c.seed = Some(1);
        assert!(c.validate().is_ok());
        c.sweep.alpha = Some(vec![]);
        assert!(c.validate().is_err());
        assert_eq!(c.constant("anything"), 1.0);
    }

    #[test]
    fn config_deserializes() {
        let c: ExperimentConfig = serde_json::from_str(
            r#"{"kind": "repulsion", "sets": {"s": "interval:128"}, "sweep": {"l_values": [500]}}"#,
        )
        .unwrap();
        assert_eq!(c.kind, ExperimentKind::Repulsion);
        assert_eq!(c.sweep.l_values, Some(vec![500]));
        assert!(
            serde_json::from_str::<ExperimentConfig>(r#"{"kind": "repulsion", "bogus": 1}"#)
                .is_err()
        );
    }
}
