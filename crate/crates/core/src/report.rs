//! Verification reports and their serialization.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub inputs: BTreeMap<String, Value>,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub parameters: BTreeMap<String, Value>,
    pub cases: Vec<Case>,
    pub witnesses: BTreeMap<String, Value>,
    pub pass: bool,
    pub schema_version: u32,
    pub tool_version: String,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>) -> Self {
        Self {
            claim: claim.into(),
            parameters: BTreeMap::new(),
            cases: Vec::new(),
            witnesses: BTreeMap::new(),
            pass: true,
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn witness(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.witnesses.insert(key.to_string(), value.into());
        self
    }

    pub fn push_case(
        &mut self,
        inputs: BTreeMap<String, Value>,
        computed: impl Into<String>,
        expected: impl Into<String>,
        pass: bool,
    ) {
        self.pass &= pass;
        self.cases.push(Case {
            inputs,
            computed: computed.into(),
            expected: expected.into(),
            pass,
        });
    }

    /// Records the outcome of a check that is reported through the
    /// witnesses rather than as a case.
    pub fn require(&mut self, ok: bool) {
        self.pass &= ok;
    }
}

/// Shorthand for case inputs.
pub fn inputs<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Canonical JSON: object keys sorted, two-space indentation, trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value keeps object keys in a BTreeMap, so the round trip sorts them
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn to_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let status = if r.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "[{status}] {}", r.claim);
    let params: Vec<String> = r
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={}", value_text(v)))
        .collect();
    let _ = writeln!(out, "  parameters: {}", params.join(", "));
    for case in &r.cases {
        let ins: Vec<String> = case
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={}", value_text(v)))
            .collect();
        let mark = if case.pass { "ok  " } else { "FAIL" };
        let _ = writeln!(
            out,
            "  {mark} {}: computed {} ; expected {}",
            ins.join(", "),
            case.computed,
            case.expected
        );
    }
    for (k, v) in &r.witnesses {
        let _ = writeln!(out, "  {k}: {}", value_text(v));
    }
    out
}

pub fn serialize_report(r: &VerificationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(r),
        OutputFormat::Text => to_text(r),
    }
}
