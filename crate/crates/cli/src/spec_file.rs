//! The JSON spec file: degeneration data (inline or a built-in fixture name)
//! plus run parameters.

use serde::Deserialize;
use sha2::{Digest, Sha256};

use relfan::error::Error;
use relfan::fans::Corruption;
use relfan::fixtures;
use relfan::hodge::json::{parse_vector, Entry};
use relfan::hodge::{DegenerationJson, ExtensionFrame};
use relfan::linalg::{Rat, ZLattice};

use crate::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DegenerationSource {
    Fixture { fixture: String },
    Inline(DegenerationJson),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub schema: u32,
    #[serde(default)]
    pub name: Option<String>,
    pub degeneration: DegenerationSource,
    /// Generators of `L ⊆ H'_Q`; the default is `H' + N'(H')`.
    #[serde(default)]
    pub lattice: Option<Vec<Vec<Entry>>>,
    #[serde(default = "default_fans")]
    pub fans: Vec<String>,
    #[serde(default = "default_window")]
    pub window: i64,
    /// Representatives of classes in `P/Q` for windows.
    #[serde(default)]
    pub cosets: Option<Vec<Vec<Entry>>>,
    #[serde(default = "default_corpus")]
    pub corpus: usize,
    #[serde(default)]
    pub seed: u64,
    /// Largest `|k|` in the `Γ` generating set.
    #[serde(default = "default_gamma_k")]
    pub gamma_k: i64,
    #[serde(default)]
    pub corruption: Option<Corruption>,
}

fn default_fans() -> Vec<String> {
    vec!["sigma3".into()]
}
fn default_window() -> i64 {
    2
}
fn default_corpus() -> usize {
    100
}
fn default_gamma_k() -> i64 {
    2
}

/// A parsed spec with its frame built.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub spec: SpecFile,
    pub frame: ExtensionFrame,
    pub lattice: Option<ZLattice>,
    pub cosets: Option<Vec<Vec<Rat>>>,
    pub hash: String,
}

impl Loaded {
    pub fn name(&self) -> String {
        self.spec.name.clone().unwrap_or_else(|| match &self.spec.degeneration {
            DegenerationSource::Fixture { fixture } => fixture.clone(),
            DegenerationSource::Inline(_) => "inline".into(),
        })
    }
}

pub fn load_str(text: &str) -> Result<Loaded, CliError> {
    let spec: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Input(format!("spec: {e}")))?;
    if spec.schema != SCHEMA {
        return Err(CliError::Input(format!("unsupported schema {} (expected {SCHEMA})", spec.schema)));
    }
    if spec.window < 0 {
        return Err(CliError::Input("window must be non-negative".into()));
    }
    let frame = match &spec.degeneration {
        DegenerationSource::Fixture { fixture } => {
            fixtures::by_name(fixture).ok_or_else(|| CliError::Input(format!("unknown fixture {fixture}")))?
        }
        DegenerationSource::Inline(d) => ExtensionFrame::new(d.into_data().map_err(CliError::from_input)?)
            .map_err(CliError::from_input)?,
    };
    let d = frame.rank();
    let vectors = |vs: &Vec<Vec<Entry>>, what: &str| -> Result<Vec<Vec<Rat>>, CliError> {
        vs.iter()
            .map(|v| {
                let v = parse_vector(v).map_err(CliError::from_input)?;
                if v.len() != d {
                    return Err(CliError::Input(format!("{what} vector has length {}, rank is {d}", v.len())));
                }
                Ok(v)
            })
            .collect()
    };
    let lattice = spec.lattice.as_ref().map(|l| vectors(l, "lattice")).transpose()?.map(|g| ZLattice::from_generators(d, &g));
    let cosets = spec.cosets.as_ref().map(|c| vectors(c, "coset")).transpose()?;
    let hash = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(Loaded { spec, frame, lattice, cosets, hash })
}

pub fn load_path(path: &std::path::Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    load_str(&text)
}

impl CliError {
    /// Errors while reading input data are input errors.
    pub fn from_input(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
