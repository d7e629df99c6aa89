use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Hex SHA-256 of some canonical text.
pub fn digest(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// What a subcommand hands back to `main`: the JSON body plus a short
/// human summary and an overall verdict.
pub struct Outcome {
    pub digest: Option<String>,
    pub result: Value,
    pub passed: Option<bool>,
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn new(result: Value) -> Self {
        Outcome {
            digest: None,
            result,
            passed: None,
            summary: Vec::new(),
        }
    }

    pub fn with_digest(mut self, d: String) -> Self {
        self.digest = Some(d);
        self
    }

    pub fn with_verdict(mut self, passed: bool) -> Self {
        self.passed = Some(passed);
        self
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    /// The full report: command echo, input digest, results, verdict.
    pub fn to_json(&self, command: &[String]) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(command));
        out.insert("input_digest".into(), json!(self.digest));
        out.insert("result".into(), self.result.clone());
        if let Some(p) = self.passed {
            out.insert("verdict".into(), json!(if p { "pass" } else { "fail" }));
        }
        Value::Object(out)
    }
}
