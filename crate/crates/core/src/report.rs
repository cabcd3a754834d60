//! Axiom-by-axiom verification reports.

use serde::Serialize;
use serde_json::Value;

use crate::laurent::TensorElement;

/// One checked identity. On failure `lhs`/`rhs` are the two sides in canonical
/// serialized form; `null` marks a side that could not be formed (e.g. the
/// inverse of a non-unit).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
}

impl AxiomCheck {
    pub fn compare(axiom: impl Into<String>, lhs: &TensorElement, rhs: &TensorElement) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            pass: lhs == rhs,
            lhs: to_value(lhs),
            rhs: to_value(rhs),
        }
    }

    pub fn failed(axiom: impl Into<String>, lhs: Value, rhs: Value) -> Self {
        AxiomCheck { axiom: axiom.into(), pass: false, lhs, rhs }
    }
}

pub(crate) fn to_value(x: &TensorElement) -> Value {
    serde_json::to_value(x).expect("tensor elements always serialize")
}

/// Serializes as a bare JSON list of checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub checks: Vec<AxiomCheck>,
}

impl VerificationReport {
    pub fn push(&mut self, check: AxiomCheck) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Whether every check whose name starts with `prefix` passed
    /// (false if there are none).
    pub fn passes(&self, prefix: &str) -> bool {
        let mut found = false;
        for c in self.checks.iter().filter(|c| c.axiom.starts_with(prefix)) {
            found = true;
            if !c.pass {
                return false;
            }
        }
        found
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
