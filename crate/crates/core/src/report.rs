//! Structured reports.
//!
//! A report is a JSON object with `"schema": 1`, the command name, its
//! parameters and command-specific sections. Keys are sorted and every
//! non-integer number is printed with 17 significant digits, so identical
//! inputs give byte-identical output. Non-finite numbers become `null`.

use serde::Serialize;
use std::io;

use serde_json::ser::Formatter;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, params: &impl Serialize) -> Result<Self> {
        let mut fields = Map::new();
        fields.insert("schema".into(), Value::from(SCHEMA_VERSION));
        fields.insert("command".into(), Value::from(command));
        fields.insert("params".into(), to_value(params)?);
        Ok(Report { fields })
    }

    /// Adds (or replaces) a top-level section.
    pub fn field(mut self, key: &str, value: &impl Serialize) -> Result<Self> {
        self.fields.insert(key.into(), to_value(value)?);
        Ok(self)
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.fields).expect("a map of values always serializes");
        s.push('\n');
        s
    }

    /// One `path = value` line per leaf; arrays of numbers stay on one line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            flatten(k, v, &mut out);
        }
        out
    }
}

/// Serializes with the report's number formatting.
pub fn to_value(value: &impl Serialize) -> Result<Value> {
    let fail = |e: serde_json::Error| Error::InternalConsistency(format!("serialization failed: {e}"));
    let mut buf = Vec::new();
    value.serialize(&mut serde_json::Serializer::with_formatter(&mut buf, Digits17)).map_err(fail)?;
    // number literals survive the round trip verbatim
    serde_json::from_slice(&buf).map_err(fail)
}

struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                flatten(&format!("{path}.{k}"), child, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{path}.{i}"), child, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{path} = {s}\n")),
        other => out.push_str(&format!("{path} = {other}\n")),
    }
}
