//! Audit reports: one record per clause per instance, with replayable
//! failure witnesses rendered inline. Rendering sorts records by
//! (suite, instance, clause) so reports are byte-identical across runs.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Skipped(_) => "skip",
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            Verdict::Pass => "",
            Verdict::Fail(d) | Verdict::Skipped(d) => d,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClauseRecord {
    pub suite: String,
    pub instance: String,
    pub clause: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub records: Vec<ClauseRecord>,
}

impl AuditReport {
    pub fn new() -> AuditReport {
        AuditReport::default()
    }

    pub fn push(
        &mut self,
        suite: impl Into<String>,
        instance: impl Into<String>,
        clause: impl Into<String>,
        verdict: Verdict,
    ) {
        self.records.push(ClauseRecord {
            suite: suite.into(),
            instance: instance.into(),
            clause: clause.into(),
            verdict,
        });
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.records.extend(other.records);
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.records.iter().any(|r| matches!(r.verdict, Verdict::Fail(_)))
    }

    pub fn any_skip(&self) -> bool {
        self.records
            .iter()
            .any(|r| matches!(r.verdict, Verdict::Skipped(_)))
    }

    /// Deterministic line rendering, sorted by (suite, instance, clause).
    pub fn render(&self) -> String {
        let mut rows: Vec<&ClauseRecord> = self.records.iter().collect();
        rows.sort_by(|a, b| {
            (&a.suite, &a.instance, &a.clause, a.verdict.tag())
                .cmp(&(&b.suite, &b.instance, &b.clause, b.verdict.tag()))
        });
        let mut out = String::new();
        for r in rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.suite,
                r.instance,
                r.clause,
                r.verdict.tag(),
                r.verdict.detail()
            ));
        }
        out
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
