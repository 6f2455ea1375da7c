//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::fixtures;
use crate::format::{CompositeSpec, Fixture, LoadError, WitnessFile};
use crate::report::{Outcome, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned plain-text table.
    Table,
    /// Structured JSON report.
    Report,
}

/// Run configuration: one command plus its inputs, budgets, seed and format.
#[derive(Debug, Parser)]
#[command(name = "crossprod", version, about = "Exact checks and searches in abelian crossed products")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for the randomized spot checks; printed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the field presentation, the relations and the cocycle table.
    Validate {
        #[arg(long)]
        fixture: PathBuf,
        /// Random samples per spot check.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Search for witnesses and run the round trips on what is found.
    Analyze {
        #[arg(long)]
        fixture: PathBuf,
        /// Use only the first N default candidates for l (0 allowed).
        #[arg(long)]
        budget_l: Option<usize>,
    },
    /// Extend to a composite KE, check, take norms back to K and power up.
    Descend {
        /// Defaults to the fixture embedded in --witness.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        composite: Option<PathBuf>,
        /// Self-contained witness file; defaults to the fixture's stored witness.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// The exponent e for the Bezout step (not computed; must be supplied).
        #[arg(short, long)]
        exponent: i64,
    },
    /// Graded skeleton audit: semiramification, theta, residues, homogeneous checks.
    Graded {
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Everything, end to end, on the built-in INSTANCE-B and INSTANCE-B3.
    Demo,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Vec<Report>, CliError> {
    let seed = cfg.seed;
    Ok(match &cfg.command {
        Command::Validate { fixture, samples } => vec![commands::validate(&Fixture::load(fixture)?, seed, *samples)],
        Command::Analyze { fixture, budget_l } => vec![commands::analyze(&Fixture::load(fixture)?, *budget_l, seed)],
        Command::Graded { fixture } => vec![commands::graded(&Fixture::load(fixture)?, seed)],
        Command::Descend { fixture, composite, witness, exponent } => {
            let witness = witness.as_deref().map(WitnessFile::load).transpose()?;
            let fx = match (fixture, &witness) {
                (Some(path), w) => {
                    let fx = Fixture::load(path)?;
                    if let Some(w) = w {
                        if !w.fixture.same_algebra(&fx) {
                            return Err(CliError::Usage(format!(
                                "the witness file was written for {}, not for {}",
                                w.fixture.name, fx.name
                            )));
                        }
                    }
                    fx
                }
                (None, Some(w)) => w.fixture.clone(),
                (None, None) => return Err(CliError::Usage("descend needs --fixture or --witness".into())),
            };
            let spec = match (composite, witness.as_ref().and_then(|w| w.composite.clone())) {
                (Some(path), from_witness) => {
                    let spec = CompositeSpec::load(path)?;
                    if from_witness.is_some_and(|c| c != spec) {
                        return Err(CliError::Usage("the witness file was written for a different composite".into()));
                    }
                    spec
                }
                (None, Some(spec)) => spec,
                (None, None) => return Err(CliError::Usage("descend needs --composite".into())),
            };
            let w = witness.map(|w| (w.over, w.strong));
            vec![commands::descend(&fx, &spec, w, *exponent, seed)]
        }
        Command::Demo => demo(seed),
    })
}

pub fn demo(seed: u64) -> Vec<Report> {
    let b = fixtures::fixture(fixtures::INSTANCE_B);
    let b3 = fixtures::fixture(fixtures::INSTANCE_B3);
    vec![
        commands::validate(&b, seed, 16),
        commands::analyze(&b, None, seed),
        commands::graded(&b, seed),
        commands::descend(&b, &fixtures::composite(fixtures::COMPOSITE_B_CUBEROOT2), None, 2, seed),
        commands::validate(&b3, seed, 16),
        commands::analyze(&b3, None, seed),
        commands::graded(&b3, seed),
        commands::descend(&b3, &fixtures::composite(fixtures::COMPOSITE_B3_SQRT5), None, 3, seed),
    ]
}

pub fn render(reports: &[Report], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => reports.iter().map(Report::table).collect::<Vec<_>>().join("\n"),
        OutputFormat::Report if reports.len() == 1 => reports[0].json() + "\n",
        OutputFormat::Report => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
    }
}

pub fn exit_code(reports: &[Report]) -> i32 {
    reports.iter().map(|r| r.outcome).max().unwrap_or(Outcome::Pass).exit_code()
}

/// Parses, runs and renders; returns the exit code with stdout and stderr text.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            return if e.use_stderr() { (2, String::new(), e.to_string()) } else { (0, e.to_string(), String::new()) };
        }
    };
    match execute(&cfg) {
        Ok(reports) => (exit_code(&reports), render(&reports, cfg.format), String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
