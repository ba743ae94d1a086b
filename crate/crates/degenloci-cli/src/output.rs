use anyhow::{bail, Result};
use clap::ValueEnum;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

/// A failed verification; maps to exit code 3.
#[derive(Debug)]
pub struct VerificationFailed(pub String);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

/// Named check → pass/fail.
#[derive(Default)]
pub struct Trace(BTreeMap<&'static str, bool>);

impl Trace {
    pub fn record(&mut self, id: &'static str, ok: bool) -> &mut Self {
        let e = self.0.entry(id).or_insert(true);
        *e &= ok;
        self
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.0.iter().filter(|(_, &ok)| !ok).map(|(k, _)| *k).collect()
    }

    pub fn to_json(&self) -> Value {
        let m: Map<String, Value> = self
            .0
            .iter()
            .map(|(k, &ok)| (k.to_string(), json!(if ok { "pass" } else { "fail" })))
            .collect();
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        self.0
            .iter()
            .map(|(k, &ok)| format!("{} {k}\n", if ok { "PASS" } else { "FAIL" }))
            .collect()
    }
}

/// One command's result in every format it supports.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub dot: Option<String>,
    pub trace: Option<Trace>,
}

impl Report {
    pub fn new(json: Value, text: String) -> Report {
        Report {
            json,
            text,
            csv: None,
            dot: None,
            trace: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Report {
        self.csv = Some(csv);
        self
    }

    pub fn with_dot(mut self, dot: String) -> Report {
        self.dot = Some(dot);
        self
    }

    pub fn with_trace(mut self, trace: Trace) -> Report {
        self.trace = Some(trace);
        self
    }

    /// Print in the requested format, then fail if any traced check failed.
    pub fn emit(mut self, format: Format) -> Result<()> {
        if let Some(t) = &self.trace {
            if let Value::Object(m) = &mut self.json {
                m.insert("traceability".into(), t.to_json());
            }
            self.text.push_str(&t.to_text());
        }
        let out = match format {
            Format::Text => self.text,
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Csv => match self.csv {
                Some(c) => c,
                None => bail!("csv output is not available for this command"),
            },
            Format::Dot => match self.dot {
                Some(d) => d,
                None => bail!("dot output is not available for this command"),
            },
        };
        print!("{out}");
        if let Some(t) = &self.trace {
            let failed = t.failed();
            if !failed.is_empty() {
                return Err(VerificationFailed(failed.join(", ")).into());
            }
        }
        Ok(())
    }
}

/// Quote a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
