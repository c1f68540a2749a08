use std::fmt::Write as _;
use std::time::Duration;

use hodge_matroid::Matroid;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    Reported,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
            Verdict::Reported => "REPORTED",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub summary: String,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl CheckResult {
    pub fn new(
        name: impl Into<String>,
        verdict: Verdict,
        summary: impl Into<String>,
        payload: Value,
    ) -> Self {
        CheckResult {
            name: name.into(),
            verdict,
            summary: summary.into(),
            payload,
            runtime_ms: None,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult::new(name, Verdict::Skipped, reason, Value::Null)
    }

    pub fn timed(mut self, elapsed: Duration, record: bool) -> Self {
        if record {
            self.runtime_ms = Some((elapsed.as_secs_f64() * 1e6).round() / 1e3);
        }
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatroidDescriptor {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flats: Option<usize>,
}

impl MatroidDescriptor {
    pub fn new(name: &str, m: &Matroid) -> Self {
        MatroidDescriptor {
            name: name.to_string(),
            ground_size: Some(m.ground_size()),
            rank: Some(m.rank()),
            flats: Some(m.num_flats()),
        }
    }

    /// For inputs that parsed but do not define a matroid.
    pub fn invalid(name: &str) -> Self {
        MatroidDescriptor {
            name: name.to_string(),
            ground_size: None,
            rank: None,
            flats: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub matroid: MatroidDescriptor,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub requested_checks: Vec<String>,
    pub entries: Vec<EntryReport>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_runtime_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, requested: Vec<String>, entries: Vec<EntryReport>) -> Self {
        let failed = entries
            .iter()
            .flat_map(|e| &e.checks)
            .any(|c| c.verdict == Verdict::Fail);
        Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool {
                name: "hodge-matroid",
                version: env!("CARGO_PKG_VERSION"),
            },
            command: command.to_string(),
            requested_checks: requested,
            entries,
            verdict: if failed { Verdict::Fail } else { Verdict::Pass },
            total_runtime_ms: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let m = &e.matroid;
            match (m.ground_size, m.rank, m.flats) {
                (Some(n), Some(r), Some(f)) => {
                    let _ = writeln!(out, "{} ({n} elements, rank {r}, {f} flats)", m.name);
                }
                _ => {
                    let _ = writeln!(out, "{} (not a matroid)", m.name);
                }
            }
            let width = e.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &e.checks {
                let _ = write!(
                    out,
                    "  {:<9} {:<width$}  {}",
                    c.verdict.label(),
                    c.name,
                    c.summary
                );
                if let Some(ms) = c.runtime_ms {
                    let _ = write!(out, "  [{ms} ms]");
                }
                out.push('\n');
            }
        }
        let failures = self
            .entries
            .iter()
            .flat_map(|e| &e.checks)
            .filter(|c| c.verdict == Verdict::Fail)
            .count();
        let _ = write!(out, "{}: {failures} failed check(s)", self.verdict.label());
        if let Some(ms) = self.total_runtime_ms {
            let _ = write!(out, " in {ms} ms");
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn failures_set_the_verdict() {
        let m = hodge_matroid::matroid::uniform(1, 1).unwrap();
        let entry = |v| EntryReport {
            matroid: MatroidDescriptor::new("u11", &m),
            checks: vec![CheckResult::new("x", v, "", json!(null))],
        };
        assert!(!Report::new("t", vec![], vec![entry(Verdict::Reported)]).failed());
        assert!(!Report::new("t", vec![], vec![entry(Verdict::Skipped)]).failed());
        assert!(Report::new(
            "t",
            vec![],
            vec![entry(Verdict::Pass), entry(Verdict::Fail)]
        )
        .failed());
    }

    #[test]
    fn runtime_is_omitted_unless_requested() {
        let c = CheckResult::skipped("x", "why").timed(Duration::from_millis(3), false);
        let v = serde_json::to_value(&c).unwrap();
        assert!(v.get("runtime_ms").is_none());
        let c = c.timed(Duration::from_micros(1500), true);
        assert_eq!(c.runtime_ms, Some(1.5));
    }
}
