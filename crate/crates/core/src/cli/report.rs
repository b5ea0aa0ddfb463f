use serde::Serialize;
use serde_json::{json, Value};

use super::config::RunConfig;
use crate::error::QgvError;
use crate::generation::Arithmetic;

pub const TOOL: &str = "qgverify";

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub params: Value,
    pub config_digest: String,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub arithmetic: ArithmeticSummary,
}

#[derive(Debug, Serialize)]
pub struct ArithmeticSummary {
    pub mode: String,
    pub primes: Vec<u64>,
}

impl ArithmeticSummary {
    /// No rank was computed.
    pub fn exact() -> Self {
        ArithmeticSummary { mode: "exact".into(), primes: vec![] }
    }

    pub fn merge<'a>(parts: impl IntoIterator<Item = &'a Arithmetic>) -> Self {
        let mut modes: Vec<&str> = Vec::new();
        let mut primes: Vec<u64> = Vec::new();
        for a in parts {
            if !modes.contains(&a.mode.as_str()) {
                modes.push(&a.mode);
            }
            for p in &a.primes {
                if !primes.contains(p) {
                    primes.push(*p);
                }
            }
        }
        let mode = match modes.as_slice() {
            [] => "exact",
            [one] => one,
            _ => "mixed",
        };
        ArithmeticSummary { mode: mode.into(), primes }
    }
}

impl Envelope {
    pub fn new(command: &str, params: Value, cfg: &RunConfig, results: Value, arithmetic: ArithmeticSummary) -> Self {
        Envelope {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            params,
            config_digest: cfg.digest(),
            results,
            timing_ms: None,
            arithmetic,
        }
    }
}

/// Drops every `elapsed_ms` field so reports compare byte for byte.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

pub fn error_object(e: &QgvError) -> Value {
    json!({ "error": e.kind(), "detail": e.to_string() })
}
