//! Machine-readable command output.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64`. JSON numbers are emitted verbatim through
//! `RawValue`, so the text is the same in both formats.

use std::io::Write;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Num(x) => format!("{x:.16e}"),
            Field::Int(i) => i.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<usize> for Field {
    fn from(i: usize) -> Self {
        Field::Int(i as i64)
    }
}

impl From<u64> for Field {
    fn from(i: u64) -> Self {
        Field::Int(i as i64)
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

/// Insertion-ordered key/value list.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Fields(Vec<(String, Field)>);

impl Fields {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(k, _)| k.as_str())
    }

    pub fn values(&self) -> impl Iterator<Item = &Field> {
        self.0.iter().map(|(_, v)| v)
    }

    fn check_finite(&self, section: &str) -> Result<()> {
        for (k, v) in &self.0 {
            if let Field::Num(x) = v {
                if !x.is_finite() {
                    return Err(Error::numeric(format!("{section}.{k} is not finite ({x})")));
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                Field::Num(_) | Field::Int(_) => {
                    let raw = RawValue::from_string(v.render()).map_err(serde::ser::Error::custom)?;
                    map.serialize_entry(k, &raw)?;
                }
                Field::Bool(b) => map.serialize_entry(k, b)?,
                Field::Text(t) => map.serialize_entry(k, t)?,
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Fields,
    pub results: Fields,
    pub diagnostics: Fields,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Fields) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            results: Fields::new(),
            diagnostics: Fields::new(),
        }
    }

    /// Every emitted numeric must be finite.
    pub fn validate(&self) -> Result<()> {
        self.inputs.check_finite("inputs")?;
        self.results.check_finite("results")?;
        self.diagnostics.check_finite("diagnostics")
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        self.validate()?;
        serde_json::to_string_pretty(self).map_err(|e| Error::numeric(e.to_string()))
    }

    pub fn to_json_line(&self) -> Result<String> {
        self.validate()?;
        serde_json::to_string(self).map_err(|e| Error::numeric(e.to_string()))
    }
}

/// Writes the `results` of each record as one CSV row, preceded by a
/// `# schema_version=...` comment line and a header taken from the first record.
pub fn write_csv(records: &[OutputRecord], out: impl Write) -> Result<()> {
    for r in records {
        r.validate()?;
    }
    let mut out = out;
    writeln!(out, "# schema_version={SCHEMA_VERSION}").map_err(io_err)?;
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = records.first() {
        w.write_record(first.results.keys()).map_err(csv_err)?;
    }
    for r in records {
        w.write_record(r.results.values().map(Field::render)).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::data(format!("write failed: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::data(format!("csv write failed: {e}"))
}
