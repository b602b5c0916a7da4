//! Pass/fail reporting shared by the verification suites and the CLI.

use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub label: String,
    pub pass: bool,
    pub detail: Option<String>,
}

/// An ordered list of named checks. Ordering is deterministic so reports are
/// byte-identical across runs.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            items: Vec::new(),
        }
    }

    pub fn pass(&mut self, label: impl Into<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            pass: true,
            detail: None,
        });
    }

    pub fn fail(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            pass: false,
            detail: Some(detail.into()),
        });
    }

    pub fn record(&mut self, label: impl Into<String>, pass: bool, detail: Option<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            pass,
            detail,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|item| item.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|item| !item.pass)
    }

    pub fn passed_count(&self) -> usize {
        self.items.iter().filter(|item| item.pass).count()
    }

    /// Absorbs another report, prefixing its labels.
    pub fn absorb(&mut self, other: CheckReport) {
        for item in other.items {
            self.items.push(CheckItem {
                label: format!("{}/{}", other.name, item.label),
                ..item
            });
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "pass": self.all_pass(),
            "checks": self.items.len(),
            "passed": self.passed_count(),
            "failures": self
                .items
                .iter()
                .filter(|item| !item.pass)
                .map(|item| {
                    json!({
                        "label": item.label,
                        "detail": item.detail,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}
