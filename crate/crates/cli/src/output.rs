//! Rendering payloads as JSON, CSV or plain text.
//!
//! Payloads are built as `serde_json::Value`, whose maps keep keys sorted,
//! so the JSON form re-serializes to itself.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

pub fn emit(payload: &Value, format: Format) {
    print!("{}", render(payload, format));
}

pub fn render(payload: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{payload}\n"),
        Format::Csv => csv(payload),
        Format::Plain => plain(payload),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// One row per suite instance, or a single row of the payload's fields.
fn csv(payload: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    match payload.get("instances").and_then(Value::as_array) {
        Some(instances) => {
            let suite = payload.get("suite").map(scalar).unwrap_or_default();
            w.write_record(["suite", "label", "lhs", "rhs", "pass", "note"]).expect("in-memory write");
            for inst in instances {
                let field = |k: &str| inst.get(k).map(scalar).unwrap_or_default();
                w.write_record([suite.clone(), field("label"), field("lhs"), field("rhs"), field("pass"), field("note")])
                    .expect("in-memory write");
            }
        }
        None => {
            let map = payload.as_object().cloned().unwrap_or_else(Map::new);
            w.write_record(map.keys()).expect("in-memory write");
            w.write_record(map.values().map(scalar)).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 fields")
}

fn plain(payload: &Value) -> String {
    let mut out = String::new();
    match payload.get("instances").and_then(Value::as_array) {
        Some(instances) => {
            out += &format!(
                "{}: {} passed, {} failed\n",
                scalar(&payload["suite"]),
                payload["passed"],
                payload["failed"]
            );
            for inst in instances {
                let status = if inst["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
                out += &format!("{status} {} lhs={} rhs={}", scalar(&inst["label"]), scalar(&inst["lhs"]), scalar(&inst["rhs"]));
                if let Some(note) = inst.get("note") {
                    out += &format!(" ({})", scalar(note));
                }
                out.push('\n');
            }
        }
        None => {
            for (k, v) in payload.as_object().into_iter().flatten() {
                out += &format!("{k}: {}\n", scalar(v));
            }
        }
    }
    out
}
