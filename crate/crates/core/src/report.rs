use alloc::string::String;
use alloc::vec::Vec;

/// Whether a failing check invalidates the whole report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Required,
    /// Reported, but does not affect [`ValidationReport::passed`].
    Advisory,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub severity: Severity,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            severity: Severity::Required,
            detail: detail.into(),
        });
    }

    pub fn advise(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            severity: Severity::Advisory,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.severity == Severity::Advisory)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self.failures().map(|c| c.name.as_str()).collect();
        if failed.is_empty() {
            alloc::format!("{} checks passed", self.checks.len())
        } else {
            alloc::format!("failed: {}", failed.join(", "))
        }
    }

    pub fn into_result(self) -> crate::Result<ValidationReport> {
        if self.passed() { Ok(self) } else { Err(crate::Error::Validation(self)) }
    }
}
