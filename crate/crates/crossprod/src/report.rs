//! Reports: sections of named rows, rendered as a plain table or as JSON.
//! Nothing time- or host-dependent goes in, so reruns are byte-identical.

use std::fmt::Write as _;

use crossprod_core::{Severity, ValidationReport};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A failed check that does not decide anything.
    Advisory,
    Info,
    /// A bounded search that found nothing.
    Exhausted,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Advisory => "NOTE",
            Status::Info => "    ",
            Status::Exhausted => "NONE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Exhausted,
    Failure,
}

impl Outcome {
    /// 0 pass, 1 mathematical failure, 3 search exhausted. (2 is I/O.)
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Failure => 1,
            Outcome::Exhausted => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    pub rows: Vec<Row>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section { title: title.into(), rows: Vec::new() }
    }

    pub fn row(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) -> &mut Self {
        self.rows.push(Row { name: name.into(), status, detail: detail.into() });
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.row(name, if passed { Status::Pass } else { Status::Fail }, detail);
        passed
    }

    pub fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) -> &mut Self {
        self.row(name, Status::Info, detail)
    }

    /// Copies every check of a core validation report.
    pub fn absorb(&mut self, report: &ValidationReport) -> bool {
        for c in &report.checks {
            let status = match (c.passed, c.severity) {
                (true, _) => Status::Pass,
                (false, Severity::Required) => Status::Fail,
                (false, Severity::Advisory) => Status::Advisory,
            };
            self.row(c.name.clone(), status, c.detail.clone());
        }
        report.passed()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub subject: String,
    pub seed: u64,
    pub outcome: Outcome,
    pub summary: Vec<String>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, subject: &str, seed: u64) -> Self {
        Report {
            command: command.into(),
            subject: subject.into(),
            seed,
            outcome: Outcome::Pass,
            summary: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
        self.outcome = self.derived_outcome();
    }

    fn derived_outcome(&self) -> Outcome {
        let statuses = self.sections.iter().flat_map(|s| &s.rows).map(|r| r.status);
        statuses.fold(Outcome::Pass, |acc, s| {
            acc.max(match s {
                Status::Fail => Outcome::Failure,
                Status::Exhausted => Outcome::Exhausted,
                _ => Outcome::Pass,
            })
        })
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Failure
    }

    pub fn row(&self, section: &str, name: &str) -> Option<&Row> {
        self.sections.iter().filter(|s| s.title == section).flat_map(|s| &s.rows).find(|r| r.name == name)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} {} (seed {}) ==", self.command, self.subject, self.seed);
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        for section in &self.sections {
            let _ = writeln!(out, "-- {} --", section.title);
            let width = section.rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
            for r in &section.rows {
                let pad = width - r.name.chars().count();
                let _ = writeln!(out, "  {}  {}{}  {}", r.status.tag(), r.name, " ".repeat(pad), r.detail);
            }
        }
        let outcome = match self.outcome {
            Outcome::Pass => "pass",
            Outcome::Failure => "FAILED",
            Outcome::Exhausted => "exhausted (unknown)",
        };
        let _ = writeln!(out, "outcome: {outcome} (exit {})", self.outcome.exit_code());
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
