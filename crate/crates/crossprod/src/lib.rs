//! Files, reports and the command line around `crossprod-core`.
//!
//! Exit codes: 0 pass, 1 a mathematical check failed, 2 unreadable or
//! malformed input, 3 a bounded search found nothing (which proves nothing).

pub mod cli;
pub mod commands;
pub mod fixtures;
pub mod format;
pub mod report;

pub use cli::{run, RunConfig};
pub use format::{CompositeSpec, Fixture, LoadError, WitnessFile};
pub use report::{Outcome, Report, Section, Status};
