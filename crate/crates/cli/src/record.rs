use std::collections::BTreeMap;

use serde::Serialize;
use zforce::graph::Girth;
use zforce::machinery::LemmaReport;
use zforce::solver::SolveOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Skipped,
    /// The budget ran out before the bound could be confirmed or refuted.
    Inconclusive,
    /// A mathematical check failed.
    Violation,
    Error,
}

/// `Z(G)` as an exact integer or the interval proven before the budget ran
/// out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ZValue {
    Exact(usize),
    Interval { lower: usize, upper: usize },
}

impl From<&SolveOutcome> for ZValue {
    fn from(outcome: &SolveOutcome) -> Self {
        match outcome {
            SolveOutcome::Exact(r) => ZValue::Exact(r.z),
            SolveOutcome::Budget(b) => ZValue::Interval {
                lower: b.lower,
                upper: b.upper,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LemmaSummary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// One output line. Field order is the key order of the JSON object.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub input_index: usize,
    pub graph6: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub n: Option<usize>,
    pub edges: Option<usize>,
    pub girth: Option<Girth>,
    pub min_degree: Option<usize>,
    pub z: Option<ZValue>,
    pub witness: Option<Vec<usize>>,
    pub lower_bound_used: Option<usize>,
    pub dk_bound: Option<usize>,
    pub slack: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_z: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
    pub lemma_summary: Option<LemmaSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<LemmaReport>,
    pub wall_time_ms: f64,
}

impl RunRecord {
    pub fn new(input_index: usize, graph6: impl Into<String>) -> Self {
        RunRecord {
            input_index,
            graph6: graph6.into(),
            status: Status::Ok,
            reason: None,
            error: None,
            n: None,
            edges: None,
            girth: None,
            min_degree: None,
            z: None,
            witness: None,
            lower_bound_used: None,
            dk_bound: None,
            slack: None,
            oracle_z: None,
            set: None,
            lemma_summary: None,
            lemmas: None,
            wall_time_ms: 0.0,
        }
    }

    pub fn error(mut self, message: impl ToString) -> Self {
        self.status = Status::Error;
        self.error = Some(message.to_string());
        self
    }

    pub fn skipped(mut self, reason: impl ToString) -> Self {
        self.status = Status::Skipped;
        self.reason = Some(reason.to_string());
        self
    }
}

/// Aggregate appended by `--summary`.
#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub records: usize,
    pub by_status: BTreeMap<String, usize>,
    pub min_slack: Option<i64>,
    pub wall_time_ms: f64,
}

impl Summary {
    pub fn add(&mut self, r: &RunRecord) {
        self.records += 1;
        let key = serde_json::to_value(r.status).expect("status serializes");
        *self
            .by_status
            .entry(key.as_str().unwrap_or("unknown").to_string())
            .or_default() += 1;
        if let Some(s) = r.slack {
            self.min_slack = Some(self.min_slack.map_or(s, |m| m.min(s)));
        }
        self.wall_time_ms = ((self.wall_time_ms + r.wall_time_ms) * 1e3).round() / 1e3;
    }
}

#[derive(Serialize)]
pub struct SummaryLine<'a> {
    pub summary: &'a Summary,
}
