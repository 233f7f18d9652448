use std::io::Write;
use std::path::Path;

use serde_json::Value;

use super::ResultRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Jsonl,
    Csv,
}

impl OutputFormat {
    /// `.csv` selects CSV; anything else is JSON Lines.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => OutputFormat::Csv,
            _ => OutputFormat::Jsonl,
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(OutputFormat::Jsonl),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Parse {
                column: 1,
                message: format!("unknown format {other:?}, expected jsonl or csv"),
            }),
        }
    }
}

const TOP_LEVEL: [&str; 3] = ["kind", "seed", "duration_ms"];

fn record_value(r: &ResultRecord) -> Result<Value> {
    serde_json::to_value(r).map_err(|e| Error::Invariant(format!("record not serializable: {e}")))
}

/// One record per line; an empty list gives an empty string.
pub fn to_jsonl_string(records: &[ResultRecord]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&record_value(r)?.to_string());
        out.push('\n');
    }
    Ok(out)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Flattened dotted columns, in first-seen order across records; an empty
/// list gives the header of the top-level fields.
pub fn to_csv_string(records: &[ResultRecord]) -> Result<String> {
    let rows: Vec<Vec<(String, String)>> = records
        .iter()
        .map(|r| {
            let mut row = Vec::new();
            flatten("", &record_value(r)?, &mut row);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut header: Vec<String> = Vec::new();
    if rows.is_empty() {
        header.extend(TOP_LEVEL.iter().map(|s| s.to_string()));
    }
    for row in &rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Invariant(format!("csv encoding failed: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for row in &rows {
        let cells = header.iter().map(|h| {
            row.iter()
                .find(|(k, _)| k == h)
                .map(|(_, v)| v.as_str())
                .unwrap_or("")
        });
        w.write_record(cells).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Invariant(format!("csv encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8"))
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Writes `records` to `path` via a temporary file in the same directory.
pub fn persist(records: &[ResultRecord], path: &Path, format: OutputFormat) -> Result<()> {
    persist_partial(records, path, format, false)
}

/// As [`persist`]; when `truncated` is set a final marker line records that
/// the run stopped early.
pub fn persist_partial(
    records: &[ResultRecord],
    path: &Path,
    format: OutputFormat,
    truncated: bool,
) -> Result<()> {
    let mut text = match format {
        OutputFormat::Jsonl => to_jsonl_string(records)?,
        OutputFormat::Csv => to_csv_string(records)?,
    };
    if truncated {
        match format {
            OutputFormat::Jsonl => text.push_str(&format!(
                "{{\"truncated\":true,\"completed\":{}}}\n",
                records.len()
            )),
            OutputFormat::Csv => {
                text.push_str(&format!("# truncated after {} records\n", records.len()))
            }
        }
    }
    write_atomic(path, &text)
}
