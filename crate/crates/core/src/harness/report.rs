//! Check outcomes and their rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped { reason: String },
}

/// One failing case: what was compared and how it differed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: String,
    pub expected: String,
    pub actual: String,
    pub diff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub params: String,
    #[serde(flatten)]
    pub status: Status,
    /// Whether the statement is proved, so that a failure is a bug rather than a falsification.
    pub proved: bool,
    pub cases: usize,
    pub passed: usize,
    pub skipped: usize,
    /// The smallest failing case first.
    pub failures: Vec<Counterexample>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn skipped(id: &str, params: &str, proved: bool, reason: impl Into<String>) -> CheckReport {
        CheckReport {
            id: id.into(),
            params: params.into(),
            status: Status::Skipped { reason: reason.into() },
            proved,
            cases: 0,
            passed: 0,
            skipped: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.failures.first()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// One line of JSON.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn status_word(&self) -> &'static str {
        match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped { .. } => "skipped",
        }
    }
}

/// Accumulates cases for one check.
#[derive(Clone, Debug)]
pub struct Recorder {
    id: String,
    params: String,
    proved: bool,
    cases: usize,
    passed: usize,
    skipped: usize,
    /// `(weight, counterexample)`; the lightest is reported first.
    failures: Vec<(usize, Counterexample)>,
    notes: Vec<String>,
}

impl Recorder {
    pub fn new(id: &str, params: impl Into<String>, proved: bool) -> Recorder {
        Recorder {
            id: id.into(),
            params: params.into(),
            proved,
            cases: 0,
            passed: 0,
            skipped: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn pass(&mut self) {
        self.cases += 1;
        self.passed += 1;
    }

    pub fn skip(&mut self, why: impl Into<String>) {
        self.cases += 1;
        self.skipped += 1;
        self.note(why);
    }

    /// Records a failure; `weight` orders counterexamples by size.
    pub fn fail(&mut self, weight: usize, case: impl Into<String>, expected: impl ToString, actual: impl ToString, diff: impl ToString) {
        self.cases += 1;
        self.failures.push((
            weight,
            Counterexample {
                case: case.into(),
                expected: expected.to_string(),
                actual: actual.to_string(),
                diff: diff.to_string(),
            },
        ));
    }

    /// Records an equality test between two displayable values.
    pub fn compare<T: PartialEq + std::fmt::Display>(&mut self, weight: usize, case: impl Into<String>, expected: &T, actual: &T, diff: impl FnOnce() -> String) {
        if expected == actual {
            self.pass();
        } else {
            self.fail(weight, case, expected, actual, diff());
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    pub fn has_failures(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn finish(mut self) -> CheckReport {
        self.failures.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.case.cmp(&b.1.case)));
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if self.passed == 0 {
            Status::Skipped { reason: self.notes.first().cloned().unwrap_or_else(|| "no applicable cases".into()) }
        } else {
            Status::Pass
        };
        CheckReport {
            id: self.id,
            params: self.params,
            status,
            proved: self.proved,
            cases: self.cases,
            passed: self.passed,
            skipped: self.skipped,
            failures: self.failures.into_iter().map(|(_, c)| c).collect(),
            notes: self.notes,
        }
    }
}

/// Fixed-width table: id, status, cases, first counterexample.
pub fn render_table(reports: &[CheckReport]) -> String {
    let width = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(5);
    let mut out = String::new();
    writeln!(out, "{:<width$}  {:<7}  {:>5}  {:>5}  {:>4}  detail", "check", "status", "cases", "pass", "skip").unwrap();
    for r in reports {
        let detail = match (&r.status, r.counterexample()) {
            (Status::Skipped { reason }, _) => reason.clone(),
            (_, Some(c)) => format!("{} ({} failing)", c.case, r.failures.len()),
            _ => String::new(),
        };
        let proved = if r.proved { "*" } else { "" };
        writeln!(
            out,
            "{:<width$}  {:<7}  {:>5}  {:>5}  {:>4}  {detail}",
            format!("{}{proved}", r.id),
            r.status_word(),
            r.cases,
            r.passed,
            r.skipped
        )
        .unwrap();
    }
    out
}

/// Exit status: 1 when a proved check fails, or any check fails under `strict`.
pub fn exit_code(reports: &[CheckReport], strict: bool) -> i32 {
    let bad = reports.iter().any(|r| r.is_fail() && (strict || r.proved));
    i32::from(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recorder_orders_failures_and_sets_status() {
        let mut r = Recorder::new("chk.x", "n<=3", false);
        r.pass();
        r.fail(5, "big", 1, 2, "-1");
        r.fail(2, "small", 1, 3, "-2");
        let rep = r.finish();
        assert!(rep.is_fail());
        assert_eq!(rep.counterexample().unwrap().case, "small");
        assert_eq!((rep.cases, rep.passed), (3, 1));
        let line = rep.to_json_line();
        let back: CheckReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rep);
        assert_eq!(exit_code(&[rep.clone()], false), 0);
        assert_eq!(exit_code(&[rep], true), 1);
    }

    #[test]
    fn empty_recorder_is_skipped() {
        let mut r = Recorder::new("chk.y", "", true);
        r.skip("needs n = 10");
        let rep = r.finish();
        assert_eq!(rep.status, Status::Skipped { reason: "needs n = 10".into() });
        assert!(render_table(&[rep]).contains("skipped"));
    }
}
