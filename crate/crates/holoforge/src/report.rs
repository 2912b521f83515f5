//! Machine-checkable run reports.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub assertions: Vec<Assertion>,
    /// Every assertion passed.
    pub pass: bool,
    /// For yes/no questions (similar? isomorphic?) the answer; `false` maps to exit code 2.
    pub answer: Option<bool>,
    pub results: Map<String, Value>,
    pub wall_ms: f64,
}

impl RunReport {
    /// 0 on success, 2 on a negative answer, 1 when an assertion failed.
    pub fn exit_code(&self) -> i32 {
        match (self.pass, self.answer) {
            (false, _) => 1,
            (true, Some(false)) => 2,
            _ => 0,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for a in &self.assertions {
            let mark = if a.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "  {mark} {}", a.name);
            if !a.pass {
                let _ = writeln!(out, "       expected {}\n       actual   {}", a.expected, a.actual);
            }
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if let Some(ans) = self.answer {
            let _ = writeln!(out, "  answer: {ans}");
        }
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{verdict} ({} assertions, {:.0} ms)", self.assertions.len(), self.wall_ms);
        out
    }
}

/// Collects assertions and results while a command runs.
pub struct ReportBuilder {
    command: String,
    inputs: Value,
    assertions: Vec<Assertion>,
    answer: Option<bool>,
    results: Map<String, Value>,
    start: Instant,
}

fn value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report values serialise")
}

impl ReportBuilder {
    pub fn new(command: impl Into<String>, inputs: Value) -> Self {
        ReportBuilder {
            command: command.into(),
            inputs,
            assertions: Vec::new(),
            answer: None,
            results: Map::new(),
            start: Instant::now(),
        }
    }

    /// Records `expected == actual`, compared as JSON values.
    pub fn check(&mut self, name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> bool {
        let (expected, actual) = (value(expected), value(actual));
        let pass = expected == actual;
        self.assertions.push(Assertion { name: name.into(), expected, actual, pass });
        pass
    }

    /// Records a condition that is not a plain equality.
    pub fn check_that(&mut self, name: impl Into<String>, expected: impl Serialize, actual: impl Serialize, pass: bool) -> bool {
        self.assertions.push(Assertion { name: name.into(), expected: value(expected), actual: value(actual), pass });
        pass
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.into(), value(v));
    }

    pub fn answer(&mut self, a: bool) {
        self.answer = Some(a);
    }

    pub fn finish(self) -> RunReport {
        RunReport {
            pass: self.assertions.iter().all(|a| a.pass),
            command: self.command,
            inputs: self.inputs,
            assertions: self.assertions,
            answer: self.answer,
            results: self.results,
            wall_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn pass_flag_and_exit_codes() {
        let mut b = ReportBuilder::new("t", json!({}));
        assert!(b.check("eq", [1, 2], vec![1u8, 2]));
        let r = b.finish();
        assert!(r.pass);
        assert_eq!(r.exit_code(), 0);

        let mut b = ReportBuilder::new("t", json!({}));
        b.check("eq", 1, 1);
        b.answer(false);
        assert_eq!(b.finish().exit_code(), 2);

        let mut b = ReportBuilder::new("t", json!({}));
        assert!(!b.check("ne", 1, 2));
        let r = b.finish();
        assert!(!r.pass);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_round_trip() {
        let mut b = ReportBuilder::new("t", json!({"x": 1}));
        b.check("a", "x", "x");
        b.result("k", vec![1, 2, 3]);
        let r = b.finish();
        let back: RunReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
