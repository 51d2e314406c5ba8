//! Findings of individual checks and the reports assembled from them.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Outcome of a single verification, before it is wrapped into a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub passed: bool,
    /// One-line description of what was checked and what was seen.
    pub summary: String,
    /// Replayable description of the first failing input.
    pub counterexample: Option<String>,
}

impl Finding {
    pub fn pass(summary: impl Into<String>) -> Self {
        Finding { passed: true, summary: summary.into(), counterexample: None }
    }

    pub fn fail(summary: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Finding { passed: false, summary: summary.into(), counterexample: Some(counterexample.into()) }
    }

    /// Combines findings: passes iff all pass; keeps the first counterexample.
    pub fn all(name: &str, parts: Vec<Finding>) -> Self {
        let passed = parts.iter().all(|f| f.passed);
        let summary = format!("{name}: {}", parts.iter().map(|f| f.summary.as_str()).collect::<Vec<_>>().join("; "));
        let counterexample = parts.into_iter().find_map(|f| f.counterexample);
        Finding { passed, summary, counterexample }
    }
}

pub const SCHEMA_VERSION: u32 = 1;

/// One verified statement in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    /// SHA-256 of the canonical description of the check's inputs.
    pub inputs_digest: String,
    pub verdict: Verdict,
    pub summary: String,
    pub counterexample: Option<String>,
    pub wall_time_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl CheckRecord {
    pub fn new(name: &str, anchor: &str, inputs: &str, finding: Finding, wall_time_ms: u64) -> Self {
        CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            inputs_digest: digest(&format!("{name}\n{inputs}")),
            verdict: if finding.passed { Verdict::Pass } else { Verdict::Fail },
            summary: finding.summary,
            counterexample: finding.counterexample,
            wall_time_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    /// Records are ordered by name whatever order they were produced in.
    pub fn new(suite: &str, seed: u64, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report { schema_version: SCHEMA_VERSION, suite: suite.to_string(), seed, checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    /// Zeroes every wall time, leaving only content determined by the inputs.
    pub fn without_timing(mut self) -> Self {
        for c in &mut self.checks {
            c.wall_time_ms = 0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let header = ["check", "verdict", "ms", "summary"];
        let rows: Vec<[String; 4]> = self
            .checks
            .iter()
            .map(|c| {
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                [c.name.clone(), verdict.to_string(), c.wall_time_ms.to_string(), c.summary.clone()]
            })
            .collect();
        let mut width = header.map(str::len);
        for r in &rows {
            for (w, cell) in width.iter_mut().zip(r).take(3) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: [&str; 4]| {
            format!("{:<w0$}  {:<w1$}  {:>w2$}  {}", cells[0], cells[1], cells[2], cells[3], w0 = width[0], w1 = width[1], w2 = width[2])
                .trim_end()
                .to_string()
        };
        let mut out = format!("suite {} (seed {}, schema {})\n", self.suite, self.seed, self.schema_version);
        out += &line(header);
        out.push('\n');
        for (r, c) in rows.iter().zip(&self.checks) {
            out += &line([&r[0], &r[1], &r[2], &r[3]]);
            out.push('\n');
            if let Some(ce) = &c.counterexample {
                out += &format!("    counterexample: {ce}\n");
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        out += &format!("{} checks, {} failed\n", self.checks.len(), failed);
        out
    }
}
