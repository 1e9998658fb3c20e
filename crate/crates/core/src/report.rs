//! Verification reports shared by every checker in the crate.

use serde::Serialize;
use std::fmt::Display;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The identity holds because it degenerates to `x = x`.
    TriviallyTrue,
}

/// One factor `([G:H] * κ(X_H))^exponent` of a product formula.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaTerm {
    /// Element labels of the subgroup, or a symbolic name such as `"∞"`.
    pub subgroup: Vec<String>,
    pub order: usize,
    pub index: usize,
    pub kappa: String,
    /// Rational exponent as `"p/q"` or an integer string.
    pub exponent: String,
}

/// Outcome of an exact identity check. `left` and `right` are the two
/// sides after all denominators and negative exponents have been cleared,
/// serialized as decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub inputs: String,
    pub left: String,
    pub right: String,
    pub status: Status,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<FormulaTerm>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall-clock time; only filled in on request so that default output
    /// stays byte-reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl VerificationReport {
    pub fn compare(
        claim: impl Into<String>,
        inputs: impl Into<String>,
        left: impl Display,
        right: impl Display,
    ) -> Self {
        let left = left.to_string();
        let right = right.to_string();
        let passed = left == right;
        VerificationReport {
            claim: claim.into(),
            inputs: inputs.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            passed,
            left,
            right,
            terms: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// A check whose truth is a boolean rather than two computed sides.
    pub fn boolean(claim: impl Into<String>, inputs: impl Into<String>, ok: bool) -> Self {
        Self::compare(claim, inputs, ok, true)
    }

    /// Marks a passing report as degenerate. Failing reports are left alone.
    pub fn trivially_true(mut self) -> Self {
        if self.passed {
            self.status = Status::TriviallyTrue;
        }
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_terms(mut self, terms: Vec<FormulaTerm>) -> Self {
        self.terms = terms;
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = Some(start.elapsed().as_millis());
        self
    }

    /// Combines sub-reports: passes iff all of them pass.
    pub fn all(claim: impl Into<String>, inputs: impl Into<String>, parts: &[VerificationReport]) -> Self {
        let failed = parts.iter().filter(|r| !r.passed).count();
        let mut r = Self::compare(claim, inputs, format!("{failed} failed"), "0 failed");
        r.notes = parts
            .iter()
            .filter(|p| !p.passed)
            .map(|p| format!("{}: {} != {}", p.claim, p.left, p.right))
            .collect();
        r
    }
}
