use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl CheckResult {
    pub fn pass(name: &'static str) -> Self {
        CheckResult { name, status: Status::Pass, witness: None, timing_ms: None }
    }

    pub fn fail(name: &'static str, witness: Value) -> Self {
        CheckResult { name, status: Status::Fail, witness: Some(witness), timing_ms: None }
    }

    pub fn skipped(name: &'static str, reason: &str) -> Self {
        CheckResult { name, status: Status::Skipped, witness: Some(Value::String(reason.to_string())), timing_ms: None }
    }

    /// Pass when `ok`, otherwise fail with the witness built lazily.
    pub fn expect(name: &'static str, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, witness())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub edges: Vec<(usize, usize)>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }

    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.timing_ms = None;
        }
    }
}

/// Pass / fail / skipped tallies per check name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub graphs: usize,
    pub counts: BTreeMap<&'static str, [usize; 3]>,
}

impl Summary {
    pub fn add(&mut self, report: &VerificationReport) {
        self.graphs += 1;
        for c in &report.checks {
            self.add_check(c.name, c.status);
        }
    }

    pub fn add_check(&mut self, name: &'static str, status: Status) {
        let slot = match status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Skipped => 2,
        };
        self.counts.entry(name).or_default()[slot] += 1;
    }

    pub fn failures(&self) -> usize {
        self.counts.values().map(|c| c[1]).sum()
    }

    pub fn table(&self) -> String {
        let width = self.counts.keys().map(|k| k.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        writeln!(out, "{:<width$}  {:>6}  {:>6}  {:>7}", "check", "pass", "fail", "skipped").unwrap();
        for (name, [p, f, s]) in &self.counts {
            writeln!(out, "{name:<width$}  {p:>6}  {f:>6}  {s:>7}").unwrap();
        }
        writeln!(out, "{} graphs, {} failures", self.graphs, self.failures()).unwrap();
        out
    }
}
