//! Structured pass/fail records returned by every verification.
//!
//! JSON layout (schema version 1):
//!
//! ```json
//! {"schema_version":1,"report":{"name":"...","status":"pass|fail|error|skipped",
//!  "witness":"...","notes":["..."],"timing_ms":12,"sub_reports":[...]}}
//! ```
//!
//! `witness`, `notes`, `timing_ms` and `sub_reports` are omitted when empty.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sub_reports: Vec<CheckReport>,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema_version: u32,
    report: CheckReport,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            notes: Vec::new(),
            timing_ms: None,
            sub_reports: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckReport {
            status: Status::Fail,
            witness: Some(witness.into()),
            ..CheckReport::pass(name)
        }
    }

    pub fn error(name: impl Into<String>, message: impl Into<String>) -> Self {
        CheckReport {
            status: Status::Error,
            witness: Some(message.into()),
            ..CheckReport::pass(name)
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            status: Status::Skipped,
            notes: vec![reason.into()],
            ..CheckReport::pass(name)
        }
    }

    /// Pass when `witness` is `None`, fail with it otherwise.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => CheckReport::pass(name),
            Some(w) => CheckReport::fail(name, w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Looks up a direct child by name.
    pub fn child(&self, name: &str) -> Option<&CheckReport> {
        self.sub_reports.iter().find(|r| r.name == name)
    }

    /// Depth-first search for a report with the given name.
    pub fn find(&self, name: &str) -> Option<&CheckReport> {
        if self.name == name {
            return Some(self);
        }
        self.sub_reports.iter().find_map(|r| r.find(name))
    }

    /// Clears all timings, recursively.
    pub fn strip_timing(&mut self) {
        self.timing_ms = None;
        for r in &mut self.sub_reports {
            r.strip_timing();
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Envelope {
            schema_version: SCHEMA_VERSION,
            report: self.clone(),
        })
        .expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&Envelope {
            schema_version: SCHEMA_VERSION,
            report: self.clone(),
        })
        .expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<CheckReport, serde_json::Error> {
        let env: Envelope = serde_json::from_str(text)?;
        Ok(env.report)
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::Skipped => "SKIP",
        };
        let pad = "  ".repeat(depth);
        write!(f, "{pad}[{tag}] {}", self.name)?;
        if let Some(ms) = self.timing_ms {
            write!(f, " ({ms} ms)")?;
        }
        writeln!(f)?;
        if let Some(w) = &self.witness {
            writeln!(f, "{pad}    witness: {w}")?;
        }
        for n in &self.notes {
            writeln!(f, "{pad}    note: {n}")?;
        }
        for r in &self.sub_reports {
            r.render(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, 0)
    }
}

/// Combines child reports under `name`.
///
/// Fail beats error beats pass. Skipped children do not affect the verdict;
/// a parent whose children are all skipped is itself skipped. The first
/// failing child's witness is propagated, prefixed with its path.
pub fn aggregate(name: impl Into<String>, reports: Vec<CheckReport>) -> CheckReport {
    let mut out = CheckReport::pass(name);
    let first = |st: Status| reports.iter().find(|r| r.status == st);
    if let Some(bad) = first(Status::Fail).or_else(|| first(Status::Error)) {
        out.status = bad.status;
        out.witness = Some(match &bad.witness {
            Some(w) if !bad.sub_reports.is_empty() => format!("{}/{}", bad.name, w),
            Some(w) => format!("{}: {}", bad.name, w),
            None => bad.name.clone(),
        });
    } else if !reports.is_empty() && reports.iter().all(|r| r.status == Status::Skipped) {
        out.status = Status::Skipped;
    }
    out.sub_reports = reports;
    out
}

/// Runs `f` and stamps the elapsed wall time on its report.
pub fn timed(f: impl FnOnce() -> CheckReport) -> CheckReport {
    let start = Instant::now();
    let mut r = f();
    r.timing_ms = Some(start.elapsed().as_millis() as u64);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_aggregate_passes() {
        assert!(aggregate("all", vec![]).passed());
    }

    #[test]
    fn failure_carries_witness() {
        let r = aggregate(
            "all",
            vec![CheckReport::pass("a"), CheckReport::fail("b", "x*y")],
        );
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.as_deref(), Some("b: x*y"));
    }

    #[test]
    fn nested_witness_path() {
        let inner = aggregate("jacobi", vec![CheckReport::fail("e,f,h", "2*h")]);
        let outer = aggregate("lie", vec![inner]);
        assert_eq!(outer.witness.as_deref(), Some("jacobi/e,f,h: 2*h"));
    }

    #[test]
    fn skipped_children_are_neutral() {
        let r = aggregate(
            "all",
            vec![
                CheckReport::pass("a"),
                CheckReport::skipped("b", "no section"),
            ],
        );
        assert!(r.passed());
        let s = aggregate("all", vec![CheckReport::skipped("b", "no section")]);
        assert_eq!(s.status, Status::Skipped);
    }

    #[test]
    fn json_has_schema_version_and_round_trips() {
        let r = aggregate(
            "all",
            vec![CheckReport::fail("b", "x - 2*z").with_note("n")],
        );
        let text = r.to_json();
        assert!(text
            .starts_with("{\"schema_version\":1,\"report\":{\"name\":\"all\",\"status\":\"fail\""));
        assert!(text.contains("\"witness\":\"b: x - 2*z\""));
        assert_eq!(CheckReport::from_json(&text).unwrap(), r);
    }
}
