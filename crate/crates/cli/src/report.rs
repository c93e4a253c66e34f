//! Versioned, deterministic check reports.

use serde::Serialize;
use serde_json::Value;

use relfan::fans::{CheckLine, Status};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub interpreted_pass: usize,
    pub precondition: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub spec_hash: String,
    pub spec_name: String,
    pub command: String,
    pub checks: Vec<CheckLine>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, spec_name: String, spec_hash: String, checks: Vec<CheckLine>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::InterpretedPass => summary.interpreted_pass += 1,
                Status::Precondition => summary.precondition += 1,
            }
        }
        Self {
            schema: REPORT_SCHEMA,
            tool: "relfan",
            tool_version: env!("CARGO_PKG_VERSION"),
            spec_hash,
            spec_name,
            command: command.into(),
            checks,
            summary,
        }
    }

    /// No line failed or had its precondition unmet.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.status.is_failure())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "relfan {} — {} on {} (spec {})\n",
            self.tool_version,
            self.command,
            self.spec_name,
            &self.spec_hash[..self.spec_hash.len().min(12)]
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::InterpretedPass => "PASS*",
                Status::Precondition => "PRECONDITION",
            };
            out += &format!("{tag:<12} {}{}\n", c.name, brief(&c.witness));
        }
        out += &format!(
            "{} pass, {} interpreted pass, {} fail, {} precondition\n",
            self.summary.pass, self.summary.interpreted_pass, self.summary.fail, self.summary.precondition
        );
        if self.summary.interpreted_pass > 0 {
            out += "(* interpreted check)\n";
        }
        out
    }
}

/// A one-line digest of the scalar fields of a witness.
fn brief(w: &Value) -> String {
    let Value::Object(m) = w else { return String::new() };
    let parts: Vec<String> = m
        .iter()
        .filter_map(|(k, v)| match v {
            Value::Number(_) | Value::Bool(_) => Some(format!("{k}={v}")),
            Value::String(s) if s.len() <= 40 => Some(format!("{k}={s}")),
            Value::Array(a) if !a.is_empty() && a.iter().all(|x| !x.is_array() && !x.is_object()) && a.len() <= 8 => {
                Some(format!("{k}={v}"))
            }
            Value::Array(a) => Some(format!("{k}: {} item(s)", a.len())),
            _ => None,
        })
        .collect();
    if parts.is_empty() {
        String::new()
    } else {
        format!("  [{}]", parts.join(", "))
    }
}
