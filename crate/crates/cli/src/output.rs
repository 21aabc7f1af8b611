//! Rendering of command results as JSON, CSV or aligned text, each carrying
//! the run metadata.

use std::fmt::Write as _;
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Everything needed to rerun a command bit-exactly, plus its wall time.
#[derive(Debug, Clone, Serialize)]
pub struct RunMetadata {
    pub command: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub generator: Option<&'static str>,
    pub workers: usize,
    pub version: &'static str,
    /// The only field allowed to differ between identical runs.
    pub duration_ms: f64,
}

impl RunMetadata {
    pub fn new(command: &str, params: Value) -> Self {
        RunMetadata {
            command: command.to_string(),
            params,
            seed: None,
            generator: None,
            workers: 1,
            version: env!("CARGO_PKG_VERSION"),
            duration_ms: 0.0,
        }
    }

    pub fn seeded(mut self, seed: u64, workers: usize) -> Self {
        self.seed = Some(seed);
        self.generator = Some(lyndon_core::sampling::GENERATOR_NAME);
        self.workers = workers;
        self
    }

    pub fn finish(mut self, elapsed: Duration) -> Self {
        self.duration_ms = elapsed.as_secs_f64() * 1e3;
        self
    }
}

/// A command result: a JSON object plus optional tabular and text views.
pub struct Output {
    pub result: Value,
    /// Header and rows for CSV output.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// Preformatted text replacing the generic key/value listing.
    pub text: Option<String>,
}

impl Output {
    pub fn new(result: impl Serialize) -> Self {
        Output {
            result: serde_json::to_value(result).expect("results serialize"),
            table: None,
            text: None,
        }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.iter().map(|h| h.to_string()).collect(), rows));
        self
    }

    pub fn text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

pub fn render(output: &Output, meta: &RunMetadata, format: Format) -> String {
    let meta_value = serde_json::to_value(meta).expect("metadata serializes");
    match format {
        Format::Json => {
            let mut obj = match &output.result {
                Value::Object(m) => m.clone(),
                other => {
                    let mut m = Map::new();
                    m.insert("result".into(), other.clone());
                    m
                }
            };
            obj.insert("metadata".into(), meta_value);
            let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("valid json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            for (k, v) in flatten(&meta_value, "metadata") {
                let _ = writeln!(s, "# {k}={v}");
            }
            match &output.table {
                Some((header, rows)) => {
                    let _ = writeln!(s, "{}", header.join(","));
                    for row in rows {
                        let _ = writeln!(s, "{}", row.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
                    }
                }
                None => {
                    let pairs = flatten(&output.result, "");
                    let _ = writeln!(
                        s,
                        "{}",
                        pairs.iter().map(|p| csv_cell(&p.0)).collect::<Vec<_>>().join(",")
                    );
                    let _ = writeln!(
                        s,
                        "{}",
                        pairs.iter().map(|p| csv_cell(&p.1)).collect::<Vec<_>>().join(",")
                    );
                }
            }
            s
        }
        Format::Text => {
            let mut s = match &output.text {
                Some(t) => t.clone(),
                None => aligned(&flatten(&output.result, "")),
            };
            s.push('\n');
            s.push_str(&aligned(&flatten(&meta_value, "metadata")));
            s
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Dotted-key listing of scalar leaves, in serialization order.
fn flatten(v: &Value, prefix: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, prefix, &mut out);
    out
}

fn walk(v: &Value, key: &str, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if key.is_empty() {
            k.to_string()
        } else {
            format!("{key}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                walk(child, &join(k), out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            out.push((key.to_string(), items.iter().map(scalar).collect::<Vec<_>>().join(" ")));
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                walk(child, &join(&i.to_string()), out);
            }
        }
        other => out.push((key.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn aligned(pairs: &[(String, String)]) -> String {
    let width = pairs.iter().map(|p| p.0.len()).max().unwrap_or(0);
    pairs.iter().fold(String::new(), |mut s, (k, v)| {
        let _ = writeln!(s, "{k:<width$}  {v}");
        s
    })
}

/// Aligned columns for a table.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut s = line(header.to_vec());
    s.push('\n');
    for row in rows {
        s.push_str(&line(row.iter().map(String::as_str).collect()));
        s.push('\n');
    }
    s
}
