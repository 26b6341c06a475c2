use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Output of one command. The exit status depends on the verdicts only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    /// Body of the text report.
    pub lines: Vec<String>,
    /// Structured results; fractions are `"p/q"` strings.
    pub data: Map<String, Value>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), lines: Vec::new(), data: Map::new(), verdicts: Vec::new(), timing_ms: None }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.data.insert(key.to_string(), v.into());
    }

    pub fn verdict(&mut self, name: impl Into<String>, witness: Option<String>) {
        self.verdicts.push(Verdict { name: name.into(), passed: witness.is_none(), witness });
    }

    /// Records a verdict whose failure carries no further witness.
    pub fn flag(&mut self, name: impl Into<String>, ok: bool) {
        self.verdicts.push(Verdict { name: name.into(), passed: ok, witness: None });
    }

    pub fn extend_axioms(&mut self, prefix: &str, r: &tensemv::AxiomReport) {
        for c in &r.checks {
            self.verdict(format!("{prefix}{}", c.axiom), c.witness.clone());
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() { 0 } else { 1 }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for v in &self.verdicts {
            match (&v.witness, v.passed) {
                (_, true) => out.push_str(&format!("PASS {}\n", v.name)),
                (Some(w), false) => out.push_str(&format!("FAIL {}: {w}\n", v.name)),
                (None, false) => out.push_str(&format!("FAIL {}\n", v.name)),
            }
        }
        if !self.verdicts.is_empty() {
            let failed = self.verdicts.iter().filter(|v| !v.passed).count();
            out.push_str(&format!("result: {} ({failed} of {} failed)\n", if failed == 0 { "pass" } else { "fail" }, self.verdicts.len()));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time: {ms:.1} ms\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn error_text(e: &CliError) -> String {
    format!("error: {e}\n")
}

pub fn error_json(command: &str, e: &CliError) -> String {
    let mut err = Map::new();
    err.insert("message".into(), e.message.clone().into());
    if let (Some(l), Some(c)) = (e.line, e.column) {
        err.insert("line".into(), l.into());
        err.insert("column".into(), c.into());
    }
    let mut top = Map::new();
    top.insert("command".into(), command.into());
    top.insert("error".into(), Value::Object(err));
    let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("errors serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_status_follows_verdicts() {
        let mut r = Report::new("check");
        assert_eq!(r.exit_code(), 0);
        r.verdict("FM1", None);
        assert_eq!(r.exit_code(), 0);
        r.verdict("FM5", Some("x = 1/2".into()));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.to_text(), "PASS FM1\nFAIL FM5: x = 1/2\nresult: fail (1 of 2 failed)\n");
    }

    #[test]
    fn json_keeps_every_witness() {
        let mut r = Report::new("check");
        r.verdict("FM2", Some("x = 0 <= y = 1/2".into()));
        r.set("value", "1/2");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdicts"][0]["witness"], "x = 0 <= y = 1/2");
        assert_eq!(v["data"]["value"], "1/2");
        assert!(v.get("timing_ms").is_none());
    }

    #[test]
    fn error_rendering() {
        let e = CliError::parse(3, 7, "bad");
        assert_eq!(error_text(&e), "error: line 3, column 7: bad\n");
        let v: Value = serde_json::from_str(&error_json("check", &e)).unwrap();
        assert_eq!(v["error"]["line"], 3);
    }
}
