//! Run reports: a JSON document with sorted keys, or a flat CSV view of its
//! records.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub command: String,
    /// Unix seconds; `SOURCE_DATE_EPOCH` when set.
    pub generated_at: u64,
    pub records: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Io(format!("serialization failed: {e}")))
}

pub fn timestamp() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse().ok()) {
        return t;
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            version: REPORT_VERSION.to_string(),
            command: command.into(),
            generated_at: timestamp(),
            records: Vec::new(),
            summary: None,
        }
    }

    /// Adds a record, tagged with `record = kind`.
    pub fn push<T: Serialize>(&mut self, kind: &str, record: &T) -> Result<()> {
        let mut v = to_value(record)?;
        if let Value::Object(m) = &mut v {
            m.insert("record".into(), Value::String(kind.into()));
        }
        self.records.push(v);
        Ok(())
    }

    pub fn set_summary<T: Serialize>(&mut self, summary: &T) -> Result<()> {
        self.summary = Some(to_value(summary)?);
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        // serde_json maps are ordered by key, so this sorts every level.
        let v = to_value(self)?;
        let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        let rows: Vec<BTreeMap<String, String>> = self.records.iter().map(flatten).collect();
        let mut columns: Vec<String> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
        columns.sort();
        columns.dedup();
        let mut w = csv::Writer::from_writer(Vec::new());
        if !columns.is_empty() {
            w.write_record(&columns).map_err(|e| Error::Io(e.to_string()))?;
        }
        for r in &rows {
            w.write_record(columns.iter().map(|c| r.get(c).map_or("", String::as_str)))
                .map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    /// Writes to `path`, or to stdout when `None`.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Nested objects become dotted columns; arrays of scalars are joined with
/// spaces; anything else is kept as compact JSON.
pub fn flatten(v: &Value) -> BTreeMap<String, String> {
    fn go(prefix: &str, v: &Value, out: &mut BTreeMap<String, String>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    go(&key, x, out);
                }
            }
            Value::Array(a) => {
                let parts: Option<Vec<String>> = a.iter().map(scalar).collect();
                let cell = match parts {
                    Some(p) => p.join(" "),
                    None => Value::Array(a.clone()).to_string(),
                };
                out.insert(prefix.to_string(), cell);
            }
            other => {
                out.insert(prefix.to_string(), scalar(other).unwrap_or_default());
            }
        }
    }
    let mut out = BTreeMap::new();
    match v {
        Value::Object(_) => go("", v, &mut out),
        other => go("value", other, &mut out),
    }
    out
}

/// Object with the given pairs, for ad-hoc records.
pub fn object<I: IntoIterator<Item = (&'static str, Value)>>(pairs: I) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<String, Value>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_keys_sorted_and_stable() {
        let mut r = RunReport::new("x");
        r.generated_at = 0;
        r.push("code", &json!({"z": 1, "a": {"y": "2", "b": [1, 2]}})).unwrap();
        let s = r.to_json().unwrap();
        let a = s.find("\"a\"").unwrap();
        let z = s.find("\"z\"").unwrap();
        assert!(a < z);
        assert_eq!(s, r.clone().to_json().unwrap());
    }

    #[test]
    fn csv_flattens() {
        let mut r = RunReport::new("x");
        r.push("code", &json!({"n": 21, "cert": {"lhs": "3198976", "verdict": "distance-optimal"}, "reps": [1, 3], "rows": [{"a": 1}]}))
            .unwrap();
        r.push("code", &json!({"n": 93})).unwrap();
        let csv = r.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "cert.lhs,cert.verdict,n,record,reps,rows");
        assert_eq!(lines.next().unwrap(), "3198976,distance-optimal,21,code,1 3,\"[{\"\"a\"\":1}]\"");
        assert_eq!(lines.next().unwrap(), ",,93,code,,");
    }

    #[test]
    fn empty_report() {
        let r = RunReport::new("family list");
        assert!(r.to_json().unwrap().contains("\"records\": []"));
        assert_eq!(r.to_csv().unwrap(), "");
    }
}
