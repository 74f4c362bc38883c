//! Machine-readable verification reports shared by every suite.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportEntry {
    pub subject: String,
    pub status: Status,
    /// Verdict kind or short detail ("symbolic-zero", "rank 5", ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    /// Counterexample description when the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub wall_time_ms: f64,
}

impl ReportEntry {
    pub fn pass(subject: impl Into<String>, verdict: impl Into<String>) -> Self {
        ReportEntry {
            subject: subject.into(),
            status: Status::Pass,
            verdict: Some(verdict.into()),
            witness: None,
            wall_time_ms: 0.0,
        }
    }

    pub fn fail(
        subject: impl Into<String>,
        verdict: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        ReportEntry {
            subject: subject.into(),
            status: Status::Fail,
            verdict: Some(verdict.into()),
            witness: Some(witness.into()),
            wall_time_ms: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub samples: u32,
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Assembles a report; the summary is derived from the entries so the
    /// tallies cannot drift apart.
    pub fn new(
        suite: impl Into<String>,
        seed: u64,
        samples: u32,
        entries: Vec<ReportEntry>,
    ) -> Self {
        let pass = entries.iter().filter(|e| e.status == Status::Pass).count();
        let fail = entries.len() - pass;
        VerificationReport {
            suite: suite.into(),
            seed,
            samples,
            entries,
            summary: Summary { pass, fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }
}
