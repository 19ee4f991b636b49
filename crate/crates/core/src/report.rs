//! Pass/fail verdicts of the exhaustive identity checks.

use serde_json::{json, Value};

use crate::poly::{Monomial, SparsePoly};

/// One failed instance of an identity: the pair of inputs, the identity
/// that broke, and both evaluated sides.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub a: Monomial,
    pub b: Monomial,
    pub law: String,
    pub lhs: SparsePoly,
    pub rhs: SparsePoly,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checked_pairs: u64,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checked_pairs": self.checked_pairs,
            "violations": self.violations.iter().map(|v| json!({
                "a": {"n": v.a.n, "m": v.a.m},
                "b": {"n": v.b.n, "m": v.b.m},
                "law": v.law,
                "lhs": v.lhs.to_string(),
                "rhs": v.rhs.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}
