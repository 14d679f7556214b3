//! Verification reports.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub label: String,
    pub computed: f64,
    pub expected: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseReport {
    /// Passes when the relative error (against `max(|expected|, floor)`) is within `tol`.
    pub fn relative(label: impl Into<String>, computed: f64, expected: f64, floor: f64, tol: f64) -> Self {
        let abs_error = (computed - expected).abs();
        let rel_error = abs_error / expected.abs().max(floor);
        CaseReport {
            label: label.into(),
            computed,
            expected,
            abs_error,
            rel_error,
            passed: rel_error <= tol && computed.is_finite(),
            note: None,
        }
    }

    pub fn absolute(label: impl Into<String>, computed: f64, expected: f64, tol: f64) -> Self {
        let abs_error = (computed - expected).abs();
        CaseReport {
            label: label.into(),
            computed,
            expected,
            abs_error,
            rel_error: abs_error / expected.abs().max(f64::MIN_POSITIVE),
            passed: abs_error <= tol && computed.is_finite(),
            note: None,
        }
    }

    pub fn exact(label: impl Into<String>, holds: bool) -> Self {
        let e = if holds { 0.0 } else { 1.0 };
        CaseReport {
            label: label.into(),
            computed: e,
            expected: 0.0,
            abs_error: e,
            rel_error: e,
            passed: holds,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub tolerance: f64,
    pub max_error: f64,
    pub cases: Vec<CaseReport>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, tolerance: f64, cases: Vec<CaseReport>) -> Self {
        let passed = cases.iter().all(|c| c.passed);
        let max_error = cases.iter().map(|c| c.rel_error.min(c.abs_error)).fold(0.0, f64::max);
        CheckReport { check: check.into(), passed, tolerance, max_error, cases }
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }
}
