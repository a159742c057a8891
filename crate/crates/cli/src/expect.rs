//! Comparison of command output against a stored JSON expectation.

use std::fs;
use std::path::Path;

use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum ExpectError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path} is not valid JSON: {source}")]
    Parse { path: String, source: serde_json::Error },
}

pub fn load(path: &Path) -> Result<Value, ExpectError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| ExpectError::Read {
        path: display.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| ExpectError::Parse { path: display, source })
}

/// One disagreement between expectation and output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub path: String,
    pub expected: String,
    pub actual: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: expected {}, got {}", self.path, self.expected, self.actual)
    }
}

/// Every value present in `expected` must appear unchanged in `actual`.
/// Keys absent from `expected` are not compared, and `millis` is ignored.
/// Arrays must match in length and element by element.
pub fn compare(expected: &Value, actual: &Value) -> Vec<Mismatch> {
    let mut out = Vec::new();
    walk(expected, Some(actual), "", &mut out);
    out
}

fn walk(expected: &Value, actual: Option<&Value>, path: &str, out: &mut Vec<Mismatch>) {
    let mismatch = |out: &mut Vec<Mismatch>, actual: Option<&Value>| {
        out.push(Mismatch {
            path: if path.is_empty() {
                "/".to_string()
            } else {
                path.to_string()
            },
            expected: expected.to_string(),
            actual: actual.map_or_else(|| "nothing".to_string(), Value::to_string),
        })
    };
    match (expected, actual) {
        (Value::Object(e), Some(Value::Object(a))) => {
            for (key, value) in e {
                if key == "millis" {
                    continue;
                }
                walk(value, a.get(key), &format!("{path}/{key}"), out);
            }
        }
        (Value::Array(e), Some(Value::Array(a))) if e.len() == a.len() => {
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                walk(ev, Some(av), &format!("{path}/{i}"), out);
            }
        }
        (e, Some(a)) if e == a => {}
        _ => mismatch(out, actual),
    }
}
