//! Verification reports shared by every checker and by the CLI.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One named check inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<String>,
    /// Exploratory checks are reported but do not decide the suite outcome.
    #[serde(skip)]
    pub exploratory: bool,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            counterexample: None,
            exploratory: false,
        }
    }

    pub fn fail(name: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            counterexample: Some(counterexample.into()),
            exploratory: false,
        }
    }

    pub fn from_result(name: impl Into<String>, result: Option<String>) -> Self {
        match result {
            None => Self::pass(name),
            Some(c) => Self::fail(name, c),
        }
    }

    pub fn exploratory(mut self) -> Self {
        self.exploratory = true;
        self.name = format!("exploratory: {}", self.name);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// True when every non-exploratory check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| !c.exploratory).all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.exploratory && !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_plain(&self, verbose: bool) -> String {
        let mut out = String::new();
        let failed = self.checks.iter().filter(|c| !c.pass && !c.exploratory).count();
        let noted = self.checks.iter().filter(|c| !c.pass && c.exploratory).count();
        out.push_str(&format!(
            "suite {}: {} ({} checks, {} failed",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        ));
        if noted > 0 {
            out.push_str(&format!(", {noted} exploratory failed"));
        }
        out.push_str(")\n");
        for c in &self.checks {
            if verbose || !c.pass {
                let status = match (c.pass, c.exploratory) {
                    (true, _) => "ok  ",
                    (false, true) => "note",
                    (false, false) => "FAIL",
                };
                out.push_str(&format!("  {status} {}", c.name));
                if let Some(ce) = &c.counterexample {
                    out.push_str(&format!("  [{ce}]"));
                }
                out.push('\n');
            }
        }
        out
    }
}
