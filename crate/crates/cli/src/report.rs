use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Output of one subcommand. `text` holds the human-readable table shown
/// under `--text` and is not part of the JSON.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub result: Value,
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, parameters: Value) -> Self {
        Report {
            command,
            parameters,
            checks: Vec::new(),
            result: Value::Null,
            text: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self, elapsed: Duration) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "pass": self.pass(),
            "checks": self.checks,
            "result": self.result,
            "wall_time_ms": elapsed.as_millis() as u64,
        })
    }

    pub fn render_text(&self, elapsed: Duration) -> String {
        let mut out = String::new();
        let params = match &self.parameters {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| format!("{k}={}", v.to_string().trim_matches('"')))
                .collect::<Vec<_>>()
                .join(" "),
            _ => String::new(),
        };
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{} {params}: {verdict}", self.command);
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "  [{mark}] {}", c.name);
            } else {
                let _ = writeln!(out, "  [{mark}] {}  {}", c.name, c.detail);
            }
        }
        for line in &self.text {
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(out, "wall time {} ms", elapsed.as_millis());
        out
    }
}
