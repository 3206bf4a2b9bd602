use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use finlat_core::Budget;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::input::InputDigest;

#[derive(Debug, Clone, Serialize)]
pub struct Expectation {
    pub name: String,
    pub expected: bool,
    pub actual: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    AssertionFailed,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub verdicts: BTreeMap<String, bool>,
    pub witnesses: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
    pub budget: Budget,
    pub expectations: Vec<Expectation>,
    pub status: Status,
}

impl AnalysisReport {
    pub fn new(command: Vec<String>, budget: Budget, timings: bool) -> Self {
        AnalysisReport {
            command,
            inputs: Vec::new(),
            verdicts: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            timings_ms: timings.then(BTreeMap::new),
            budget,
            expectations: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn verdict(&mut self, name: &str, value: bool) {
        self.verdicts.insert(name.to_string(), value);
    }

    pub fn witness(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("witnesses serialize");
        self.witnesses.insert(name.to_string(), v);
    }

    /// Runs `f`, recording its duration when timings are on.
    pub fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if let Some(t) = &mut self.timings_ms {
            t.insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }

    /// Checks every `NAME=BOOL` assertion against the verdicts.
    pub fn apply_expectations(&mut self, specs: &[String]) -> CliResult<()> {
        for spec in specs {
            let (name, value) = spec
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--expect `{spec}` is not NAME=BOOL")))?;
            let expected: bool = value
                .parse()
                .map_err(|_| CliError::Usage(format!("--expect `{spec}`: `{value}` is not true/false")))?;
            let actual = *self.verdicts.get(name).ok_or_else(|| {
                let known: Vec<&str> = self.verdicts.keys().map(String::as_str).collect();
                CliError::Usage(format!("--expect: no verdict `{name}` (have: {})", known.join(", ")))
            })?;
            self.expectations.push(Expectation {
                name: name.to_string(),
                expected,
                actual,
            });
        }
        if self.expectations.iter().any(|e| e.expected != e.actual) {
            self.status = Status::AssertionFailed;
        }
        Ok(())
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes") + "\n"
    }

    pub fn render_pretty(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command.join(" ")).unwrap();
        for i in &self.inputs {
            writeln!(out, "input:   {} (sha256 {})", i.source, &i.sha256[..16]).unwrap();
        }
        writeln!(out, "verdicts:").unwrap();
        for (k, v) in &self.verdicts {
            writeln!(out, "  {k:<28} {v}").unwrap();
        }
        if !self.witnesses.is_empty() {
            writeln!(out, "witnesses:").unwrap();
            for (k, v) in &self.witnesses {
                let body = serde_json::to_string_pretty(v).expect("json");
                writeln!(out, "  {k}:").unwrap();
                for line in body.lines() {
                    writeln!(out, "    {line}").unwrap();
                }
            }
        }
        if let Some(t) = &self.timings_ms {
            writeln!(out, "timings (ms):").unwrap();
            for (k, v) in t {
                writeln!(out, "  {k:<28} {v:.3}").unwrap();
            }
        }
        for e in &self.expectations {
            let mark = if e.expected == e.actual { "ok" } else { "FAILED" };
            writeln!(out, "expect {}={} ... {mark}", e.name, e.expected).unwrap();
        }
        writeln!(
            out,
            "status: {}",
            serde_json::to_value(self.status).unwrap().as_str().unwrap()
        )
        .unwrap();
        out
    }
}
