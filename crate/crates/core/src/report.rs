//! Machine-readable claim reports.
//!
//! Every verification produces a [`ClaimReport`]: the claim name, its
//! parameters, the exact left-hand side, the (possibly real-valued)
//! right-hand side, and a satisfied flag. Randomized experiments always
//! record their seed. Reports serialize deterministically: params are kept
//! in a sorted map and field order is fixed by the struct.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClaimReport {
    pub claim_name: String,
    pub params: BTreeMap<String, String>,
    /// Exact value: an integer, or a reduced fraction rendered as "num/den".
    pub lhs: String,
    pub rhs: String,
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub premise_satisfied: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub runtime_ms: u64,
}

impl ClaimReport {
    pub fn new(name: impl Into<String>) -> Self {
        ClaimReport {
            claim_name: name.into(),
            params: BTreeMap::new(),
            lhs: String::new(),
            rhs: String::new(),
            satisfied: false,
            premise_satisfied: None,
            seed: None,
            runtime_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn lhs(mut self, v: impl ToString) -> Self {
        self.lhs = v.to_string();
        self
    }

    pub fn rhs(mut self, v: impl ToString) -> Self {
        self.rhs = v.to_string();
        self
    }

    pub fn satisfied(mut self, v: bool) -> Self {
        self.satisfied = v;
        self
    }

    pub fn premise(mut self, v: bool) -> Self {
        self.premise_satisfied = Some(v);
        self
    }

    pub fn seed(mut self, v: u64) -> Self {
        self.seed = Some(v);
        self
    }

    /// A claim counts as a real failure only when it fails with its premise
    /// true (or with no premise at all). Vacuous claims never fail.
    pub fn failed_non_vacuously(&self) -> bool {
        !self.satisfied && self.premise_satisfied != Some(false)
    }
}

/// Measures wall time for `runtime_ms`.
pub struct Timer(Instant);

impl Timer {
    pub fn start() -> Self {
        Timer(Instant::now())
    }

    pub fn stamp(&self, mut report: ClaimReport) -> ClaimReport {
        report.runtime_ms = self.0.elapsed().as_millis() as u64;
        report
    }
}

/// Renders `num/den` reduced, as a plain integer when the division is exact.
pub fn exact_ratio_string(num: u128, den: u128) -> String {
    assert!(den != 0);
    let g = gcd(num, den);
    let (n, d) = (num / g, den / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}
