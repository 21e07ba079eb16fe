//! Report documents: one schema for single evaluations and suite runs.
//!
//! Top level: `{tool_version, config, results, failures, ...}`. Reals are
//! written in shortest round-trip form, so every `f64` reads back exactly.

use std::collections::BTreeMap;

use meanbound_core::{BoundReport, OperatorBoundReport};
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Inputs of one evaluation, enough to replay it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// Abscissa of polynomial checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint_a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint_b: Option<String>,
    /// Row-major entries, recorded for failing operator trials.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_a: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_b: Option<Vec<f64>>,
}

/// One evaluated instance. For operator families `lhs`/`rhs` are the
/// Frobenius norms of the two sides and `gap` is the smallest eigenvalue of
/// `RHS - LHS`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub suite: String,
    pub family: String,
    pub branch: Option<String>,
    pub trial: Option<u64>,
    pub inputs: Inputs,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub gap: Option<f64>,
    pub hypothesis_ok: bool,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<bool>,
    /// Error message when the evaluation itself failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cause: Option<String>,
}

impl TrialRecord {
    pub fn failed(&self) -> bool {
        self.cause.is_some() || (self.hypothesis_ok && !self.holds)
    }

    pub fn from_bound(r: &BoundReport, branch: Option<String>, trial: Option<u64>) -> Self {
        Self {
            suite: "scalar".into(),
            family: r.family.name().into(),
            branch,
            trial,
            inputs: Inputs {
                a: Some(r.a),
                b: Some(r.b),
                v: Some(r.v),
                n: r.n,
                ..Inputs::default()
            },
            lhs: Some(r.lhs),
            rhs: Some(r.rhs),
            gap: Some(r.gap),
            hypothesis_ok: r.hypothesis_ok,
            holds: r.holds,
            degenerate: None,
            cause: None,
        }
    }

    pub fn from_operator(r: &OperatorBoundReport, trial: Option<u64>) -> Self {
        Self {
            suite: "operator".into(),
            family: r.family.name().into(),
            branch: Some(r.branch.name().into()),
            trial,
            inputs: Inputs {
                v: Some(r.v),
                n: Some(r.n),
                dim: Some(r.dim),
                fingerprint_a: Some(format!("{:016x}", r.fingerprint_a)),
                fingerprint_b: Some(format!("{:016x}", r.fingerprint_b)),
                ..Inputs::default()
            },
            lhs: Some(r.lhs_norm),
            rhs: Some(r.rhs_norm),
            gap: Some(r.min_eig_gap),
            hypothesis_ok: r.hypothesis_ok,
            holds: r.holds,
            degenerate: Some(r.degenerate),
            cause: None,
        }
    }
}

/// Per-family accounting. `passes + failures + skips == trials`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub suite: String,
    pub family: String,
    pub trials: u64,
    pub passes: u64,
    pub failures: u64,
    pub skips: u64,
    /// Smallest gap among trials whose hypothesis held.
    pub worst_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tool_version: String,
    pub config: serde_json::Value,
    pub summaries: Vec<FamilySummary>,
    /// Worst trial per family, or every trial with `record_all`.
    pub results: Vec<TrialRecord>,
    /// Sorted by suite, family and trial index.
    pub failures: Vec<TrialRecord>,
    /// Number of evaluations per library operation.
    pub coverage: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl SuiteReport {
    pub fn total_failures(&self) -> u64 {
        self.summaries.iter().map(|s| s.failures).sum()
    }

    pub fn summary(&self, family: &str) -> Option<&FamilySummary> {
        self.summaries.iter().find(|s| s.family == family)
    }

    /// Pretty JSON including wall time.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Pretty JSON without the wall-time field; identical configurations give
    /// byte-identical output.
    pub fn to_json_deterministic(&self) -> String {
        let mut r = self.clone();
        r.wall_time_s = None;
        r.to_json()
    }
}

/// Output of a single-shot command: same top-level shape as a suite report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub tool_version: String,
    pub config: serde_json::Value,
    pub results: Vec<TrialRecord>,
    pub failures: Vec<TrialRecord>,
}

impl Document {
    pub fn new(config: serde_json::Value, results: Vec<TrialRecord>) -> Self {
        let failures = results.iter().filter(|r| r.failed()).cloned().collect();
        Self {
            tool_version: TOOL_VERSION.into(),
            config,
            results,
            failures,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

pub const CSV_HEADER: &str =
    "suite,family,branch,trial,a,b,v,n,x,dim,lhs,rhs,gap,hypothesis_ok,holds,degenerate,cause";

fn cell_f(x: Option<f64>) -> String {
    match x {
        Some(x) => serde_json::to_string(&x).unwrap_or_default(),
        None => String::new(),
    }
}

fn cell<T: ToString>(x: Option<T>) -> String {
    x.map(|x| x.to_string()).unwrap_or_default()
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Flat projection of records; numbers are formatted exactly as in JSON.
pub fn to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let row = [
            quote(&r.suite),
            quote(&r.family),
            cell(r.branch.as_deref()),
            cell(r.trial),
            cell_f(r.inputs.a),
            cell_f(r.inputs.b),
            cell_f(r.inputs.v),
            cell(r.inputs.n),
            cell_f(r.inputs.x),
            cell(r.inputs.dim),
            cell_f(r.lhs),
            cell_f(r.rhs),
            cell_f(r.gap),
            r.hypothesis_ok.to_string(),
            r.holds.to_string(),
            cell(r.degenerate),
            quote(r.cause.as_deref().unwrap_or("")),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
