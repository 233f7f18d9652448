//! Standalone SVG line charts of two numeric record fields.

use std::fmt::Write as _;

use serde_json::Value;

use crate::args::PlotArgs;
use crate::error::{CliError, CliResult};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 32.0;
const BOTTOM: f64 = 56.0;
const TICKS: usize = 5;

/// Looks up `field` as a dotted path from the record root, then, for a bare
/// name, under `params` and `measured`.
pub fn lookup<'a>(record: &'a Value, field: &str) -> Option<&'a Value> {
    let walk = |root: &'a Value| {
        field.split('.').try_fold(root, |v, key| match v {
            Value::Object(m) => m.get(key),
            Value::Array(a) => key.parse::<usize>().ok().and_then(|i| a.get(i)),
            _ => None,
        })
    };
    walk(record).or_else(|| {
        ["params", "measured"]
            .iter()
            .find_map(|section| record.get(section).and_then(walk))
    })
}

fn numeric(record: &Value, field: &str, line: usize, log: bool) -> CliResult<f64> {
    let err = |problem| CliError::Field {
        field: field.to_string(),
        line,
        problem,
    };
    let x = lookup(record, field)
        .ok_or_else(|| err("is missing"))?
        .as_f64()
        .ok_or_else(|| err("is not a number"))?;
    if log && !(x > 0.0) {
        return Err(err("is not positive on a log axis"));
    }
    Ok(if log { x.log10() } else { x })
}

/// Points in file order; blank lines and truncation markers are skipped.
pub fn read_points(text: &str, args: &PlotArgs) -> CliResult<Vec<(f64, f64)>> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: Value = serde_json::from_str(line)
            .map_err(|e| CliError::io(&args.input, format!("line {}: {e}", i + 1)))?;
        if record.get("truncated").is_some() {
            continue;
        }
        points.push((
            numeric(&record, &args.x, i + 1, args.logx)?,
            numeric(&record, &args.y, i + 1, args.logy)?,
        ));
    }
    Ok(points)
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn label(v: f64, log: bool) -> String {
    let v = if log { 10f64.powf(v) } else { v };
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// The chart as SVG text; identical inputs give identical bytes.
pub fn render(points: &[(f64, f64)], args: &PlotArgs) -> String {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (x0, x1) = range(sorted.iter().map(|p| p.0));
    let (y0, y1) = range(sorted.iter().map(|p| p.1));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x, y) = (escape(&args.x), escape(&args.y));
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{y} vs {x}</text>"#,
        WIDTH / 2.0
    );
    let _ = writeln!(s, r#"<g id="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        TOP + ph,
        LEFT + pw,
        TOP + ph
    );
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{:.2}"/>"#,
        TOP + ph
    );
    for i in 0..TICKS {
        let t = i as f64 / (TICKS - 1) as f64;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let _ = writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}"/>"#,
            sx(xv),
            TOP + ph,
            TOP + ph + 5.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{2:.2}" y2="{1:.2}"/>"#,
            LEFT - 5.0,
            sy(yv),
            LEFT
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<g id="labels" font-family="sans-serif" font-size="11">"#
    );
    for i in 0..TICKS {
        let t = i as f64 / (TICKS - 1) as f64;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            sx(xv),
            TOP + ph + 18.0,
            label(xv, args.logx)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            sy(yv) + 4.0,
            label(yv, args.logy)
        );
    }
    let log_note = |log: bool| if log { " (log)" } else { "" };
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x}{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        log_note(args.logx)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{y}{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        log_note(args.logy)
    );
    let _ = writeln!(s, "</g>");
    if !sorted.is_empty() {
        let _ = writeln!(s, r#"<g id="data">"#);
        if sorted.len() > 1 {
            let pts: Vec<String> = sorted
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
                pts.join(" ")
            );
        }
        for &(x, y) in &sorted {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#,
                sx(x),
                sy(y)
            );
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

pub fn plot(args: &PlotArgs) -> CliResult<()> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let points = read_points(&text, args)?;
    std::fs::write(&args.out, render(&points, args)).map_err(|e| CliError::io(&args.out, e))
}
