//! Spec-file loading, report assembly and suite dispatch behind the `relfan`
//! binary.

pub mod report;
pub mod spec_file;
pub mod suites;

pub use report::Report;
pub use spec_file::{load_path, load_str, Loaded, SpecFile};
pub use suites::{run_suite, RmfInput, Suite};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

/// `check`: one suite, as a report.
pub fn check(l: &Loaded, suite: Suite) -> Result<Report, CliError> {
    let lines = run_suite(l, suite)?;
    Ok(Report::new(&format!("check {}", suite.name()), l.name(), l.hash.clone(), lines))
}

pub fn build(l: &Loaded) -> Result<Report, CliError> {
    Ok(Report::new("build", l.name(), l.hash.clone(), suites::build(l)?))
}

pub fn rmf(l: &Loaded, input: &RmfInput) -> Result<Report, CliError> {
    Ok(Report::new("rmf", l.name(), l.hash.clone(), suites::rmf(l, input)?))
}
