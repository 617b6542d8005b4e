use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Violations kept verbatim in a report; the rest are only counted.
pub const MAX_LISTED_VIOLATIONS: usize = 16;

/// Outcome of a verification pass.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
    pub details: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            pass: true,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.pass = false;
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED_VIOLATIONS {
            self.violations.push(msg.into());
        }
    }

    /// Records one checked condition; `msg` is only built on failure.
    pub fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation(msg());
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn fail(&mut self, reason: impl Into<String>) {
        self.violation(reason);
    }

    /// Folds a sub-report in, prefixing its violations.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        for v in &other.violations {
            if self.violations.len() < MAX_LISTED_VIOLATIONS {
                self.violations.push(format!("{}: {}", other.check, v));
            }
        }
        self.violation_count += other.violation_count;
        self.pass &= other.pass;
        self.details.insert(other.check.clone(), Value::Bool(other.pass));
    }
}
