//! Verification reports: one record per checked relation instance.

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub relation: String,
    pub instance: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct VerificationReport {
    pub title: String,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport { title: title.into(), ..Default::default() }
    }

    pub fn record(&mut self, relation: &str, instance: impl Into<String>, pass: bool, witness: Option<String>) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(CheckRecord {
            relation: relation.to_string(),
            instance: instance.into(),
            pass,
            witness: if pass { None } else { witness },
        });
    }

    pub fn pass(&mut self, relation: &str, instance: impl Into<String>) {
        self.record(relation, instance, true, None);
    }

    pub fn fail(&mut self, relation: &str, instance: impl Into<String>, witness: impl Into<String>) {
        self.record(relation, instance, false, Some(witness.into()));
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.checks.extend(other.checks);
    }

    /// Distinct relation names that were checked.
    pub fn relations(&self) -> Vec<String> {
        let mut v: Vec<String> = self.checks.iter().map(|c| c.relation.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn summary(&self) -> String {
        format!("{}: {} passed, {} failed", self.title, self.passed, self.failed)
    }
}
