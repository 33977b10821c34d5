//! Report document shared by all CLI commands: a flat list of checks
//! (id, lhs, rhs, margin, tolerance, pass) plus command metadata,
//! rendered either as human-readable text or as versioned JSON
//! (`schema: "v1"`).
//!
//! Exact-mode scalars are serialized as exact rational strings so that a
//! fixed configuration yields byte-identical structured reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::pinching::PinchReport;
use crate::scalar::Scalar;

pub const SCHEMA_VERSION: &str = "v1";

/// Scalar-mode flag carried by every report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Floating,
    Rational,
}

impl Precision {
    pub fn label(self) -> &'static str {
        match self {
            Precision::Floating => "floating",
            Precision::Rational => "rational",
        }
    }
}

/// A report scalar: a float in floating mode, an exact rational string in
/// rational mode.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ReportValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl ReportValue {
    pub fn scalar<S: Scalar>(v: &S) -> ReportValue {
        if S::EXACT {
            ReportValue::Text(v.display_compact())
        } else {
            ReportValue::Float(v.to_f64())
        }
    }

    pub fn render(&self) -> String {
        match self {
            ReportValue::Bool(b) => b.to_string(),
            ReportValue::Int(i) => i.to_string(),
            ReportValue::Float(x) => format!("{x:.12e}"),
            ReportValue::Text(s) => s.clone(),
        }
    }
}

/// One check line: a named comparison with its margin and verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
    pub margin: ReportValue,
    pub tolerance: ReportValue,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn from_pinch<S: Scalar>(report: &PinchReport<S>) -> CheckRecord {
        let mut note = report.equality_diagnosis.clone();
        if report.equality_flag {
            let eq = "equality".to_string();
            note = Some(match note {
                Some(n) => format!("{eq}; {n}"),
                None => eq,
            });
        }
        CheckRecord {
            id: report.id.label().to_string(),
            lhs: ReportValue::scalar(&report.lhs),
            rhs: ReportValue::scalar(&report.rhs),
            margin: ReportValue::scalar(&report.margin),
            tolerance: ReportValue::scalar(&S::tol_eq()),
            pass: report.satisfied,
            note,
        }
    }

    /// A residual-style record: passes when `residual <= tolerance`.
    pub fn from_residual<S: Scalar>(id: &str, residual: &S, tolerance: &S) -> CheckRecord {
        let pass = residual.clone() <= tolerance.clone();
        CheckRecord {
            id: id.to_string(),
            lhs: ReportValue::scalar(residual),
            rhs: ReportValue::scalar(&S::zero()),
            margin: ReportValue::scalar(&(tolerance.clone() - residual.clone())),
            tolerance: ReportValue::scalar(tolerance),
            pass,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckRecord {
        self.note = Some(note.into());
        self
    }
}

/// The full report for one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc {
    pub schema: &'static str,
    pub command: String,
    pub precision: &'static str,
    pub checks: Vec<CheckRecord>,
    pub meta: BTreeMap<String, ReportValue>,
}

impl ReportDoc {
    pub fn new(command: impl Into<String>, precision: Precision) -> ReportDoc {
        ReportDoc {
            schema: SCHEMA_VERSION,
            command: command.into(),
            precision: precision.label(),
            checks: Vec::new(),
            meta: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: ReportValue) {
        self.meta.insert(key.into(), value);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# {} (schema {}, precision {})\n",
            self.command, self.schema, self.precision
        ));
        for (k, v) in &self.meta {
            out.push_str(&format!("  {k} = {}\n", v.render()));
        }
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{verdict} {}: lhs={} rhs={} margin={} tol={}",
                c.id,
                c.lhs.render(),
                c.rhs.render(),
                c.margin.render(),
                c.tolerance.render()
            ));
            if let Some(note) = &c.note {
                out.push_str(&format!("  [{note}]"));
            }
            out.push('\n');
        }
        let verdict = if self.all_pass() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict}: {}/{} checks passed\n",
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        ));
        out
    }
}
