use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use energy_lab::experiments::{
    persist_partial, run, to_csv_string, to_jsonl_string, ExperimentConfig, ExperimentKind,
    OutputFormat, RunContext,
};
use energy_lab::Limits;

use crate::args::{
    ApSearchArgs, ExperimentCommon, FormatArg, IdentitiesArgs, IncidenceArgs, ProductGrowthArgs,
    RepulsionArgs, ShiftGrowthArgs, TlScanArgs,
};
use crate::error::{CliError, CliResult};

/// Exit status after an interrupt, following the shell convention for SIGINT.
pub const INTERRUPTED: i32 = 130;

fn read_config(path: &Path, kind: ExperimentKind) -> CliResult<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let json = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let config: ExperimentConfig = if json {
        serde_json::from_str(&text).map_err(|e| CliError::io(path, e))?
    } else {
        toml::from_str(&text).map_err(|e| CliError::io(path, e))?
    };
    if config.kind != kind {
        return Err(CliError::Usage(format!(
            "{} holds a {} config, not {kind}",
            path.display(),
            config.kind
        )));
    }
    Ok(config)
}

fn put(config: &mut ExperimentConfig, name: &str, v: Option<f64>) {
    if let Some(v) = v {
        config.constants.insert(name.into(), v);
    }
}

fn put_set(config: &mut ExperimentConfig, name: &str, spec: &Option<String>) {
    if let Some(s) = spec {
        config.sets.insert(name.into(), s.clone());
    }
}

/// Names `s1, s2, …` for repeatable set flags, padded so that name order
/// is flag order.
fn put_numbered(config: &mut ExperimentConfig, prefix: &str, specs: &[String]) {
    let width = specs.len().to_string().len();
    for (i, s) in specs.iter().enumerate() {
        config
            .sets
            .insert(format!("{prefix}{:0width$}", i + 1), s.clone());
    }
}

pub fn repulsion(a: &RepulsionArgs) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(ExperimentKind::Repulsion);
    put_set(&mut c, "s", &a.s_gen);
    c.sweep.l_values = a.l_values.clone();
    c.sweep.d_values = a.d_values.clone();
    c.sweep.eps = a.eps.clone();
    put(&mut c, "k", a.k);
    c
}

pub fn ap_search(a: &ApSearchArgs) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(ExperimentKind::ApSearch);
    put_numbered(&mut c, "s", &a.s_gen);
    c
}

pub fn shift_growth(a: &ShiftGrowthArgs) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(ExperimentKind::ShiftGrowth);
    put_set(&mut c, "a", &a.a_gen);
    put_set(&mut c, "s", &a.s_gen);
    c.sweep.alpha = a.alpha.clone();
    put(&mut c, "c", a.c);
    put(&mut c, "k", a.k);
    c
}

pub fn tl_scan(a: &TlScanArgs) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(ExperimentKind::TlScan);
    put_set(&mut c, "f", &a.f_gen);
    c.sweep.j_values = a.j_values.clone();
    c.sweep.eps = a.eps.clone();
    put(&mut c, "c", a.c);
    put(&mut c, "k", a.k);
    c
}

pub fn incidence(a: &IncidenceArgs) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(ExperimentKind::Incidence);
    put_set(&mut c, "f", &a.f_gen);
    put_set(&mut c, "b", &a.b_gen);
    put_set(&mut c, "c", &a.c_gen);
    c.sweep.delta = a.delta.clone();
    c
}

pub fn product_growth(a: &ProductGrowthArgs) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(ExperimentKind::ProductGrowth);
    put_numbered(&mut c, "a", &a.a_gen);
    c.sweep.shifts = a.shifts.clone();
    c.sweep.m_values = a.m_values.clone();
    put(&mut c, "c", a.c);
    c
}

pub fn identities(a: &IdentitiesArgs) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(ExperimentKind::Identities);
    c.sweep.samples = a.samples.clone();
    c.sweep.alpha = a.alpha.clone();
    c.sweep.z_values = a.z_values.clone();
    c.sweep.moments = a.moments.clone();
    put(&mut c, "weights", a.weights.map(f64::from));
    put(&mut c, "t_max", a.t_max.map(|t| t as f64));
    c
}

/// Resolves the config, runs it and writes the records. Returns the exit
/// status.
pub fn execute(
    kind: ExperimentKind,
    common: &ExperimentCommon,
    inline: ExperimentConfig,
    limits: Limits,
) -> CliResult<i32> {
    let mut config = match &common.config {
        Some(path) => read_config(path, kind)?,
        None => inline,
    };
    if common.seed.is_some() {
        config.seed = common.seed;
    }
    if common.out.is_some() {
        config.output = common.out.clone();
    }
    let format = match (common.format, &config.output) {
        (Some(FormatArg::Jsonl), _) => OutputFormat::Jsonl,
        (Some(FormatArg::Csv), _) => OutputFormat::Csv,
        (None, Some(p)) => OutputFormat::from_path(p),
        (None, None) => OutputFormat::Jsonl,
    };
    config.validate()?;

    let cancel = Arc::new(AtomicBool::new(false));
    let flag = cancel.clone();
    // Fails only if a handler is already installed, which leaves the
    // default behavior in place.
    let _ = ctrlc::set_handler(move || flag.store(true, Ordering::SeqCst));
    let ctx = RunContext {
        limits,
        cancel: Some(cancel),
        timestamps: !common.no_timestamps,
    };
    let outcome = run(&config, &ctx)?;

    match &config.output {
        Some(path) => {
            persist_partial(&outcome.records, path, format, outcome.interrupted)?;
            for r in &outcome.records {
                println!("{}", r.summary());
            }
        }
        None => {
            let text = match format {
                OutputFormat::Jsonl => to_jsonl_string(&outcome.records)?,
                OutputFormat::Csv => to_csv_string(&outcome.records)?,
            };
            print!("{text}");
            if outcome.interrupted {
                let n = outcome.records.len();
                match format {
                    OutputFormat::Jsonl => println!("{{\"truncated\":true,\"completed\":{n}}}"),
                    OutputFormat::Csv => println!("# truncated after {n} records"),
                }
            }
        }
    }
    if outcome.interrupted {
        eprintln!(
            "energy-lab: interrupted after {} records",
            outcome.records.len()
        );
        return Ok(INTERRUPTED);
    }
    Ok(0)
}
